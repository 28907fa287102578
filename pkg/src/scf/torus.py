"""Maximal-torus elements of compact classical groups and their Weyl conjugacy.

A torus element is a vector of *turns* (angle / 2pi) kept as exact
``Fraction`` values in ``[0, 1)``.  Two torus elements are conjugate in the
ambient connected group iff they lie in one Weyl orbit; the Weyl groups used
here are

======================  ==============================  =================
family                  Weyl action on turns            order
======================  ==============================  =================
U(n), SU(n)             permutations                    n!
SO(2n+1), Sp(n), O(m)   permutations and sign flips     2^n n!
SO(2n)                  permutations, even sign flips   2^(n-1) n!
======================  ==============================  =================

``canonical_form`` picks one representative per orbit without enumerating
it; ``weyl_orbit`` enumerates the orbit explicitly and serves as the
independent oracle for small rank.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from scf.errors import InvalidInput, Refusal

Turn = Fraction

ORBIT_RANK_LIMIT = 6

_HALF = Fraction(1, 2)


def as_turn(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or ``"p/q"`` string) to a turn in [0, 1)."""
    if isinstance(value, str):
        value = parse_turn(value)
    elif isinstance(value, float):
        raise InvalidInput("floating-point turns are not supported; use p/q")
    return Fraction(value) % 1


def parse_turn(text: str) -> Fraction:
    if "." in text or "e" in text.lower():
        raise InvalidInput(f"turns must be written as p/q, got {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"cannot parse turn {text!r}") from exc
    return value % 1


def format_turn(t: Fraction) -> str:
    return f"{t.numerator}/{t.denominator}" if t.denominator != 1 else str(t.numerator)


def fold(t: Fraction) -> Fraction:
    """Identify a turn with its negative: ``t -> min(t, 1 - t)``."""
    t %= 1
    return min(t, 1 - t) if t else t


class Family(str, Enum):
    UNITARY = "UnitaryA"
    SPECIAL_UNITARY = "SpecialUnitaryA"
    ODD_ORTHOGONAL = "OddOrthogonalB"
    SYMPLECTIC = "SymplecticC"
    EVEN_ORTHOGONAL = "EvenOrthogonalD"
    FULL_ORTHOGONAL = "FullOrthogonal"


_SIGNED = {Family.ODD_ORTHOGONAL, Family.SYMPLECTIC, Family.FULL_ORTHOGONAL}


@dataclass(frozen=True, order=True)
class GroupTag:
    """A classical group, identified by family and torus dimension.

    For the unitary families ``rank`` is the number of eigenvalue turns, i.e.
    the matrix size ``n`` (the SU(n) torus is the sum-zero slice of it).
    ``FullOrthogonal`` also carries the matrix size ``size``; its torus rank
    is ``size // 2``.
    """

    family: Family
    rank: int
    size: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidInput(f"rank must be a positive integer, got {self.rank!r}")
        if self.family is Family.FULL_ORTHOGONAL:
            size = self.size if self.size is not None else 2 * self.rank
            if size // 2 != self.rank:
                raise InvalidInput(f"O({size}) has torus rank {size // 2}, not {self.rank}")
            object.__setattr__(self, "size", size)
        elif self.size is not None and self.size != self.matrix_size:
            raise InvalidInput(f"size {self.size} inconsistent with {self.family.value} rank {self.rank}")

    @classmethod
    def u(cls, n: int) -> GroupTag:
        return cls(Family.UNITARY, n)

    @classmethod
    def su(cls, n: int) -> GroupTag:
        return cls(Family.SPECIAL_UNITARY, n)

    @classmethod
    def sp(cls, n: int) -> GroupTag:
        return cls(Family.SYMPLECTIC, n)

    @classmethod
    def so(cls, n: int) -> GroupTag:
        """SO(n) for n >= 3 (B type when odd, D type when even); SO(2) is D rank 1."""
        if n < 2:
            raise InvalidInput(f"SO({n}) has no nontrivial torus")
        return cls(Family.ODD_ORTHOGONAL, n // 2) if n % 2 else cls(Family.EVEN_ORTHOGONAL, n // 2)

    @classmethod
    def o(cls, n: int) -> GroupTag:
        if n < 2:
            raise InvalidInput(f"O({n}) has no nontrivial torus")
        return cls(Family.FULL_ORTHOGONAL, n // 2, n)

    @property
    def matrix_size(self) -> int:
        if self.family in (Family.UNITARY, Family.SPECIAL_UNITARY, Family.SYMPLECTIC):
            return self.rank
        if self.family is Family.ODD_ORTHOGONAL:
            return 2 * self.rank + 1
        if self.family is Family.EVEN_ORTHOGONAL:
            return 2 * self.rank
        return self.size

    @property
    def weyl_order(self) -> int:
        n = self.rank
        if self.family in (Family.UNITARY, Family.SPECIAL_UNITARY):
            return math.factorial(n)
        if self.family is Family.EVEN_ORTHOGONAL:
            return 2 ** (n - 1) * math.factorial(n)
        return 2**n * math.factorial(n)

    def label(self) -> str:
        names = {
            Family.UNITARY: "U",
            Family.SPECIAL_UNITARY: "SU",
            Family.ODD_ORTHOGONAL: "SO",
            Family.EVEN_ORTHOGONAL: "SO",
            Family.SYMPLECTIC: "Sp",
            Family.FULL_ORTHOGONAL: "O",
        }
        return f"{names[self.family]}({self.matrix_size})"

    def to_json(self) -> dict:
        out = {"family": self.family.value, "rank": self.rank}
        if self.family is Family.FULL_ORTHOGONAL:
            out["size"] = self.size
        return out

    @classmethod
    def from_json(cls, data: dict) -> GroupTag:
        try:
            return cls(Family(data["family"]), int(data["rank"]), data.get("size"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"bad group tag {data!r}") from exc


@dataclass(frozen=True)
class TorusElement:
    turns: tuple[Fraction, ...]
    group: GroupTag

    def __post_init__(self):
        turns = tuple(as_turn(t) for t in self.turns)
        object.__setattr__(self, "turns", turns)
        if len(turns) != self.group.rank:
            raise InvalidInput(f"{self.group.label()} needs {self.group.rank} turns, got {len(turns)}")
        if self.group.family is Family.SPECIAL_UNITARY and sum(turns) % 1:
            raise InvalidInput("SU(n) torus turns must sum to an integer")

    @property
    def order(self) -> int:
        """Multiplicative order (lcm of the turn denominators)."""
        return math.lcm(*(t.denominator for t in self.turns))

    def to_json(self) -> dict:
        return {"turns": [format_turn(t) for t in self.turns], "group": self.group.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> TorusElement:
        if not isinstance(data, dict) or "turns" not in data or "group" not in data:
            raise InvalidInput(f"bad torus element {data!r}")
        return cls(tuple(as_turn(str(t)) for t in data["turns"]), GroupTag.from_json(data["group"]))

    def __str__(self):
        return f"[{', '.join(format_turn(t) for t in self.turns)}] in {self.group.label()}"


@dataclass(frozen=True)
class CanonicalForm:
    """Weyl-orbit representative.

    ``chirality`` is ``"even"``/``"odd"`` only for SO(2n) orbits with no turn
    in {0, 1/2}; there the folded turn list alone cannot tell the two chiral
    orbits apart.
    """

    turns: tuple[Fraction, ...]
    group: GroupTag
    chirality: str | None = None

    def representative(self) -> TorusElement:
        """An element of the orbit this form describes."""
        turns = list(self.turns)
        if self.chirality == "odd":
            turns[-1] = (1 - turns[-1]) % 1
        return TorusElement(tuple(turns), self.group)

    def to_json(self) -> dict:
        out = {"turns": [format_turn(t) for t in self.turns], "group": self.group.to_json()}
        if self.chirality is not None:
            out["chirality"] = self.chirality
        return out

    def __str__(self):
        chir = f" ({self.chirality})" if self.chirality else ""
        return f"[{', '.join(format_turn(t) for t in self.turns)}]{chir}"


def canonical_form(x: TorusElement) -> CanonicalForm:
    family = x.group.family
    if family in (Family.UNITARY, Family.SPECIAL_UNITARY):
        return CanonicalForm(tuple(sorted(x.turns, reverse=True)), x.group)
    folded = tuple(sorted((fold(t) for t in x.turns), reverse=True))
    if family in _SIGNED:
        return CanonicalForm(folded, x.group)
    # SO(2n): a turn equal to its own negative absorbs the flip parity
    if any(t == 0 or t == _HALF for t in folded):
        return CanonicalForm(folded, x.group)
    flips = sum(1 for t in x.turns if t > _HALF)
    return CanonicalForm(folded, x.group, "odd" if flips % 2 else "even")


def conjugate_in(x: TorusElement, y: TorusElement, group: GroupTag | None = None) -> bool:
    """True iff ``x`` and ``y`` are conjugate in ``group`` (defaults to ``x.group``)."""
    group = x.group if group is None else group
    if x.group != group or y.group != group:
        raise InvalidInput(f"group mismatch: {x.group.label()}, {y.group.label()} vs {group.label()}")
    return canonical_form(x) == canonical_form(y)


@dataclass(frozen=True, order=True)
class SignedPerm:
    """Weyl element acting by ``(w x)_i = signs[i] * x[perm[i]]``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> SignedPerm:
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> SignedPerm:
        perm = list(range(n))
        perm[i], perm[j] = j, i
        return cls(tuple(perm), (1,) * n)

    @classmethod
    def flip(cls, n: int, *coords: int) -> SignedPerm:
        return cls(tuple(range(n)), tuple(-1 if i in coords else 1 for i in range(n)))

    def __call__(self, x: TorusElement) -> TorusElement:
        return TorusElement(self.apply(x.turns), x.group)

    def apply(self, turns: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple((s * turns[p]) % 1 for p, s in zip(self.perm, self.signs))

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        # (self * other)(x) == self(other(x))
        perm = tuple(other.perm[p] for p in self.perm)
        signs = tuple(s * other.signs[p] for p, s in zip(self.perm, self.signs))
        return SignedPerm(perm, signs)

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and all(s == 1 for s in self.signs)


def weyl_group(group: GroupTag) -> Iterator[SignedPerm]:
    """Enumerate the Weyl group of ``group`` in a fixed lexicographic order."""
    n = group.rank
    family = group.family
    for perm in itertools.permutations(range(n)):
        if family in (Family.UNITARY, Family.SPECIAL_UNITARY):
            yield SignedPerm(perm, (1,) * n)
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if family is Family.EVEN_ORTHOGONAL and signs.count(-1) % 2:
                continue
            yield SignedPerm(perm, signs)


def weyl_orbit(x: TorusElement, limit: int = ORBIT_RANK_LIMIT) -> frozenset[TorusElement]:
    """Enumerate the Weyl orbit of ``x`` explicitly (oracle for small rank)."""
    if x.group.rank > limit:
        raise Refusal(f"rank {x.group.rank} exceeds the orbit oracle limit {limit}")
    choices = [(t, (-t) % 1) for t in x.turns]
    images = {
        tuple(choices[p][s < 0] for p, s in zip(w.perm, w.signs)) for w in weyl_group(x.group)
    }
    return frozenset(_trusted(turns, x.group) for turns in images)


def _trusted(turns: tuple[Fraction, ...], group: GroupTag) -> TorusElement:
    # turns already reduced and validated by construction
    el = object.__new__(TorusElement)
    object.__setattr__(el, "turns", turns)
    object.__setattr__(el, "group", group)
    return el


def torsion_elements(group: GroupTag, q: int) -> Iterator[TorusElement]:
    """All elements with every turn in (1/q)Z, numerators in lexicographic order."""
    if q < 1:
        raise InvalidInput(f"torsion order must be positive, got {q}")
    for nums in itertools.product(range(q), repeat=group.rank):
        if group.family is Family.SPECIAL_UNITARY and sum(nums) % q:
            continue
        yield TorusElement(tuple(Fraction(k, q) for k in nums), group)


class EmbeddingRule(str, Enum):
    """Standard torus inclusions of one classical group into another."""

    IDENTITY = "identity"
    APPEND_ZERO = "append_zero"


_F = Family
_SUPPORTED_EMBEDDINGS = {
    # same turn vector: SO(2n) < SO(2n+1), SO(2n) < O(2n), SO(2n+1) < O(2n+1)
    EmbeddingRule.IDENTITY: {
        (_F.EVEN_ORTHOGONAL, _F.ODD_ORTHOGONAL),
        (_F.EVEN_ORTHOGONAL, _F.FULL_ORTHOGONAL),
        (_F.ODD_ORTHOGONAL, _F.FULL_ORTHOGONAL),
        (_F.SPECIAL_UNITARY, _F.UNITARY),
    },
    # one extra zero turn: SO(2n-1) < SO(2n), SO(m) < SO(m+2), U(n) < U(n+1)
    EmbeddingRule.APPEND_ZERO: {
        (_F.ODD_ORTHOGONAL, _F.EVEN_ORTHOGONAL),
        (_F.ODD_ORTHOGONAL, _F.ODD_ORTHOGONAL),
        (_F.EVEN_ORTHOGONAL, _F.EVEN_ORTHOGONAL),
        (_F.UNITARY, _F.UNITARY),
        (_F.SYMPLECTIC, _F.SYMPLECTIC),
    },
}


def infer_embedding(sub: GroupTag, amb: GroupTag) -> EmbeddingRule:
    if amb.rank == sub.rank:
        return EmbeddingRule.IDENTITY
    if amb.rank == sub.rank + 1:
        return EmbeddingRule.APPEND_ZERO
    raise Refusal(f"no standard torus inclusion {sub.label()} -> {amb.label()}")


def check_embedding(sub: GroupTag, amb: GroupTag, rule: EmbeddingRule) -> None:
    rule = EmbeddingRule(rule)
    if rule is EmbeddingRule.IDENTITY:
        ok = amb.rank == sub.rank and (sub == amb or (sub.family, amb.family) in _SUPPORTED_EMBEDDINGS[rule])
    else:
        ok = amb.rank == sub.rank + 1 and (sub.family, amb.family) in _SUPPORTED_EMBEDDINGS[rule]
    if not ok:
        raise Refusal(f"unsupported embedding {sub.label()} -> {amb.label()} via {rule.value}")


def embed(x: TorusElement, amb: GroupTag, rule: EmbeddingRule) -> TorusElement:
    check_embedding(x.group, amb, rule)
    turns = x.turns if EmbeddingRule(rule) is EmbeddingRule.IDENTITY else x.turns + (Fraction(0),)
    return TorusElement(turns, amb)


def fusion_witness(
    sub: GroupTag, amb: GroupTag, rule: EmbeddingRule, q: int
) -> tuple[TorusElement, TorusElement] | None:
    """First pair of q-torsion elements fused by the inclusion, or ``None``.

    Elements are bucketed by the ambient canonical form of their image; a
    bucket holding two distinct subgroup canonical forms is a fusion.
    """
    check_embedding(sub, amb, rule)
    buckets: dict[CanonicalForm, dict[CanonicalForm, TorusElement]] = defaultdict(dict)
    for x in torsion_elements(sub, q):
        bucket = buckets[canonical_form(embed(x, amb, rule))]
        bucket.setdefault(canonical_form(x), x)
        if len(bucket) > 1:
            first, second = bucket.values()
            return first, second
    return None


def fusion_elementwise(sub: GroupTag, amb: GroupTag, rule: EmbeddingRule, q: int) -> bool:
    """Does the torus inclusion create no new conjugacies among q-torsion elements?"""
    return fusion_witness(sub, amb, rule, q) is None
