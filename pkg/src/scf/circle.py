"""SCF for circle subgroups H(a) = {diag(z^a_1, ..., z^a_n)} of U(n).

H(a) fuses two of its elements in U(n) exactly when, for some integers
m > k > 1, the residues of ``k * a`` and of ``a`` modulo ``m`` agree as
multisets.  The pair (m, k) then realizes ``h(z) ~ h(z^k)`` with
``z = exp(2 pi i / m)``.

No bound on ``m`` is known, so :func:`decide_scf_circle` is a bounded
semi-decision: ``Fails`` is a certificate, ``Holds`` only reports the
exhausted modulus.
"""
from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from scf._scan import first_hit
from scf.errors import InvalidInput
from scf.torus import GroupTag, TorusElement, conjugate_in
from scf.verdict import Fails, Holds, ScfVerdict


@dataclass(frozen=True)
class WeightSequence:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(self.weights)
        object.__setattr__(self, "weights", w)
        if not w or any(not isinstance(x, int) or x < 0 for x in w):
            raise InvalidInput(f"weights must be nonnegative integers, got {w!r}")
        if list(w) != sorted(w):
            raise InvalidInput(f"weights must be non-decreasing, got {w!r}")
        if math.gcd(*w) != 1:
            raise InvalidInput(f"weights must have gcd 1, got {w!r}")

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __str__(self):
        return "(" + ", ".join(map(str, self.weights)) + ")"


@dataclass(frozen=True)
class CongruenceWitness:
    """``k * a_i == a_permutation[i] (mod m)`` for every i."""

    m: int
    k: int
    permutation: tuple[int, ...]

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k, "permutation": list(self.permutation)}

    @classmethod
    def from_json(cls, data: dict) -> CongruenceWitness:
        return cls(int(data["m"]), int(data["k"]), tuple(int(i) for i in data["permutation"]))


def normalize_weights(raw: Iterable[int]) -> WeightSequence:
    raw = [int(x) for x in raw]
    if not raw or any(x < 0 for x in raw):
        raise InvalidInput(f"weights must be a nonempty list of nonnegative integers, got {raw!r}")
    g = math.gcd(*raw)
    if g == 0:
        raise InvalidInput("weights are all zero")
    return WeightSequence(tuple(sorted(x // g for x in raw)))


def default_modulus_bound(a: WeightSequence) -> int:
    return max(3, len(a) * max(a.weights) ** 2)


def _matching_multiplier(weights: tuple[int, ...], m: int) -> int | None:
    """Smallest k in (1, m) with k*a == a (mod m) as multisets, if any."""
    target = sorted(x % m for x in weights)
    total = sum(target) % m
    for k in range(2, m):
        # residue sums must agree modulo m before the multisets can
        if (k * total) % m != total:
            continue
        if sorted(k * x % m for x in weights) == target:
            return k
    return None


def _scan_modulus(weights: tuple[int, ...], m: int) -> tuple[int, int] | None:
    k = _matching_multiplier(weights, m)
    return None if k is None else (m, k)


def _matching_permutation(weights: tuple[int, ...], m: int, k: int) -> tuple[int, ...] | None:
    slots: dict[int, list[int]] = {}
    for j, x in enumerate(weights):
        slots.setdefault(x % m, []).append(j)
    sigma = []
    for x in weights:
        free = slots.get(k * x % m)
        if not free:
            return None
        sigma.append(free.pop(0))
    return tuple(sigma)


def make_witness(a: WeightSequence, m: int, k: int) -> CongruenceWitness:
    sigma = _matching_permutation(a.weights, m, k)
    if sigma is None:
        raise InvalidInput(f"(m={m}, k={k}) does not match residues of {a}")
    return CongruenceWitness(m, k, sigma)


def decide_scf_circle(a: WeightSequence, m_max: int | None = None, workers: int = 1) -> ScfVerdict:
    """Scan m = 3..m_max, k = 2..m-1 for the lexicographically first fusion."""
    if m_max is None:
        m_max = default_modulus_bound(a)
    if m_max < 3:
        raise InvalidInput(f"m_max must be at least 3, got {m_max}")
    hit = first_hit(functools.partial(_scan_modulus, a.weights), range(3, m_max + 1), workers)
    if hit is None:
        return Holds(m_max)
    return Fails(make_witness(a, *hit))


def realized_elements(a: WeightSequence, m: int, k: int) -> tuple[TorusElement, TorusElement]:
    """h(z) and h(z^k) for z = exp(2 pi i / m), as U(n) torus elements."""
    group = GroupTag.u(len(a))
    hz = TorusElement(tuple(Fraction(x, m) for x in a), group)
    hw = TorusElement(tuple(Fraction(k * x, m) for x in a), group)
    return hz, hw


def verify_witness_circle(a: WeightSequence, w: CongruenceWitness) -> bool:
    m, k = w.m, w.k
    if not (m > 2 and 1 < k < m):
        return False
    if Counter(k * x % m for x in a) != Counter(x % m for x in a):
        return False
    if sorted(w.permutation) != list(range(len(a))):
        return False
    if any((k * x - a.weights[j]) % m for x, j in zip(a, w.permutation)):
        return False
    hz, hw = realized_elements(a, m, k)
    return conjugate_in(hz, hw, hz.group) and hz != hw


def reflection_constant(a: WeightSequence) -> int | None:
    """The c with {c - a_i} == {a_i} as multisets, if one exists."""
    c = a.weights[0] + a.weights[-1]
    return c if sorted(c - x for x in a) == list(a.weights) else None


def negation_symmetric(a: WeightSequence) -> bool:
    """Is the multiset ``a`` symmetric under ``x -> c - x`` for some constant c?

    When it is, ``-a == a (mod m)`` for every divisor m >= 3 of c, so
    ``(m, m - 1)`` is a fusion witness for each such m.
    """
    return reflection_constant(a) is not None
