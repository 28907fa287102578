"""SCF for SO(3) embedded in SO(N) through a sum of irreducibles rho_{a_1} + ... + rho_{a_s}.

The irreducible rho_n has dimension 2n+1 and sends the rotation by theta to
rotation blocks of angles n*theta, ..., 2*theta, theta plus one fixed
vector.  Two SO(3) torus elements (turns p/q and p'/q) are conjugate in SO(3)
iff p' = +-p (mod q); their images are conjugate in SO(N) iff the folded
angle multisets ``{fold(c * p / q)}`` coincide.  Every summand contributes a
fixed vector, so an SO(2n) ambient always has a zero turn and the chirality
bit of the D-type canonical form never binds.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from scf._scan import first_hit
from scf.errors import InvalidInput
from scf.torus import GroupTag, TorusElement, as_turn, conjugate_in
from scf.verdict import Fails, Holds, ScfVerdict


@dataclass(frozen=True)
class SpinSequence:
    spins: tuple[int, ...]

    def __post_init__(self):
        s = tuple(self.spins)
        object.__setattr__(self, "spins", s)
        if not s or any(not isinstance(x, int) or x < 1 for x in s):
            raise InvalidInput(f"spins must be positive integers, got {s!r}")
        if list(s) != sorted(s):
            raise InvalidInput(f"spins must be non-decreasing, got {s!r}")

    @classmethod
    def of(cls, *spins: int) -> SpinSequence:
        return cls(tuple(sorted(spins)))

    def __str__(self):
        return "(" + ", ".join(map(str, self.spins)) + ")"


@dataclass(frozen=True)
class AngleProfile:
    coefficients: tuple[int, ...]
    fixed_count: int
    ambient_dim: int

    @property
    def ambient(self) -> GroupTag:
        return GroupTag.so(self.ambient_dim)


@dataclass(frozen=True)
class So3Witness:
    """Rotations by p/q and p'/q: fused in SO(N), distinct classes in SO(3)."""

    q: int
    p: int
    p_prime: int

    def to_json(self) -> dict:
        return {"q": self.q, "p": self.p, "p_prime": self.p_prime}

    @classmethod
    def from_json(cls, data: dict) -> So3Witness:
        return cls(int(data["q"]), int(data["p"]), int(data["p_prime"]))


def _block_coefficients(a: SpinSequence) -> list[int]:
    # block order of rho_n: n*theta first, theta last
    return [c for n in a.spins for c in range(n, 0, -1)]


def expand_profile(a: SpinSequence) -> AngleProfile:
    coefficients = tuple(sorted(_block_coefficients(a)))
    s = len(a.spins)
    return AngleProfile(coefficients, s, 2 * len(coefficients) + s)


def image_element(a: SpinSequence, theta) -> TorusElement:
    """Image of the rotation by ``theta`` turns as an SO(N) torus element."""
    theta = as_turn(theta)
    profile = expand_profile(a)
    turns = [c * theta for c in _block_coefficients(a)]
    turns += [Fraction(0)] * (profile.fixed_count // 2)
    return TorusElement(tuple(turns), profile.ambient)


def _signature(coefficients: tuple[int, ...], p: int, q: int) -> tuple[int, ...]:
    """Folded numerators of c*p/q, sorted: equal signatures <=> SO(N)-conjugate images."""
    out = []
    for c in coefficients:
        r = c * p % q
        out.append(min(r, q - r))
    out.sort()
    return tuple(out)


def _scan_order(coefficients: tuple[int, ...], q: int) -> So3Witness | None:
    """Lexicographically first (p, p') at denominator q, or None."""
    buckets: dict[tuple[int, ...], list[int]] = {}
    for p in range(1, q):
        buckets.setdefault(_signature(coefficients, p, q), []).append(p)
    for p in range(1, q):
        for pp in buckets[_signature(coefficients, p, q)]:
            if pp != p and pp != q - p:
                return So3Witness(q, p, pp)
    return None


def decide_scf_so3(a: SpinSequence, q_max: int, workers: int = 1) -> ScfVerdict:
    """Scan q from q_max down to 3, then (p, p') lexicographically within each q.

    The largest order is tried first so that a witness at the bound itself is
    the one reported, e.g. q = 2n + 1 for a single spin n.
    """
    if q_max < 3:
        raise InvalidInput(f"q_max must be at least 3, got {q_max}")
    coefficients = expand_profile(a).coefficients
    hit = first_hit(functools.partial(_scan_order, coefficients), range(q_max, 2, -1), workers)
    return Holds(q_max) if hit is None else Fails(hit)


def verify_witness_so3(a: SpinSequence, w: So3Witness) -> bool:
    q, p, pp = w.q, w.p, w.p_prime
    if q < 3 or not (0 < p < q and 0 < pp < q):
        return False
    if (pp - p) % q == 0 or (pp + p) % q == 0:
        return False
    x = image_element(a, Fraction(p, q))
    y = image_element(a, Fraction(pp, q))
    return conjugate_in(x, y, x.group)


def spin_sequences(sum_max: int) -> Iterator[SpinSequence]:
    """Non-decreasing positive sequences with sum <= sum_max, by sum then lexicographically."""

    def parts(total: int, smallest: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(smallest, total + 1):
            for rest in parts(total - first, first):
                yield (first,) + rest

    for total in range(1, sum_max + 1):
        yield from (SpinSequence(p) for p in parts(total, 1))


@dataclass(frozen=True)
class SearchRow:
    spins: SpinSequence
    verdict: ScfVerdict

    def to_json(self) -> dict:
        return {"spins": list(self.spins.spins), **self.verdict.to_json()}


def search_open_question(sum_max: int, q_max: int, workers: int = 1) -> list[SearchRow]:
    """Classify every spin sequence with sum <= sum_max up to denominator q_max."""
    if sum_max < 1:
        raise InvalidInput(f"sum_max must be at least 1, got {sum_max}")
    return [SearchRow(a, decide_scf_so3(a, q_max, workers)) for a in spin_sequences(sum_max)]
