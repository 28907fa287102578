"""Simple compact symmetric pairs: SCF catalog and element witnesses.

A pair (g, h) can be realized by an SCF pair (G, H) only for

    (k + k, diag k), (su(n), so(n)), (su(2n), sp(n)), (so(2n), so(2n-1)), (e6, f4);

requiring H connected replaces (su(n), so(n)) by (su(2n+1), so(2n+1)).
Every other simple pair is excluded by one of four reasons:

* ``EqualRank``: h contains a maximal torus of g; a Weyl element outside
  W_H moves a regular torus element out of its W_H orbit.
* ``OddSumWitness``: so(2p+2q+2) > so(2p+1) + so(2q+1); explicit X, Y below.
* ``InvolutionCount``: e6 > sp(4) (catalog only).
* ``OuterAutomorphism``: su(2n) > so(2n) with H connected (catalog only).
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from scf.errors import DegenerateWitness, InvalidInput, NoWitness
from scf.torus import (
    Family,
    GroupTag,
    SignedPerm,
    TorusElement,
    as_turn,
    conjugate_in,
    weyl_group,
    weyl_orbit,
)

DEFAULT_THETA = Fraction(1, 5)


class PairFamily(str, Enum):
    DIAGONAL_KK = "diagonal"
    SU_SO_ODD = "su-so-odd"
    SU_SO_EVEN = "su-so-even"
    SU_SP = "su-sp"
    SO_SO_ODD = "so-so-odd"
    E6_F4 = "e6-f4"
    EQUAL_RANK = "equal-rank"
    SO_SUM_ODD = "so-sum-odd"
    E6_SP4 = "e6-sp4"
    SU_O = "su-o"


class Reason(str, Enum):
    EQUAL_RANK = "EqualRank"
    ODD_SUM_WITNESS = "OddSumWitness"
    INVOLUTION_COUNT = "InvolutionCount"
    OUTER_AUTOMORPHISM = "OuterAutomorphism"


# equal-rank kinds: name -> (param names, minimum values, label template)
EQUAL_RANK_KINDS: dict[str, tuple[tuple[str, ...], tuple[int, ...], str]] = {
    "su-s(u+u)": (("p", "q"), (1, 1), "(su({n}), s(u({p}) + u({q})))"),
    "so-so-even": (("p", "q"), (1, 1), "(so({n}), so({P}) + so({Q}))"),
    "so-so-mixed": (("p", "q"), (1, 0), "(so({n}), so({P}) + so({Q}))"),
    "sp-sp": (("p", "q"), (1, 1), "(sp({n}), sp({p}) + sp({q}))"),
    "so-u": (("n",), (3,), "(so({N}), u({n}))"),
    "sp-u": (("n",), (2,), "(sp({n}), u({n}))"),
    "g2": ((), (), "(g2, su(2) + su(2))"),
    "f4-so9": ((), (), "(f4, so(9))"),
    "f4-sp3": ((), (), "(f4, sp(3) + su(2))"),
    "e6-su6": ((), (), "(e6, su(6) + su(2))"),
    "e6-so10": ((), (), "(e6, so(10) + u(1))"),
    "e7-su8": ((), (), "(e7, su(8))"),
    "e7-so12": ((), (), "(e7, so(12) + su(2))"),
    "e7-e6": ((), (), "(e7, e6 + u(1))"),
    "e8-so16": ((), (), "(e8, so(16))"),
    "e8-e7": ((), (), "(e8, e7 + su(2))"),
}


@dataclass(frozen=True)
class SymPairCase:
    """One symmetric pair with its SCF status.

    ``status`` answers "is there *some* SCF realization (G, H)?";
    ``connected_status`` answers the same with H required connected.
    ``None`` means SCF-realizable, otherwise the obstruction.
    """

    family: PairFamily
    params: tuple[tuple[str, int | str], ...]
    label: str
    status: Reason | None
    connected_status: Reason | None

    @property
    def scf_realizable(self) -> bool:
        return self.status is None

    @property
    def connected_only(self) -> bool:
        """True when the obstruction applies only to connected H."""
        return self.status is None and self.connected_status is not None

    def to_json(self) -> dict:
        def fmt(r: Reason | None) -> str:
            return "ScfRealizable" if r is None else f"NotScf({r.value})"

        return {
            "family": self.family.value,
            "params": dict(self.params),
            "pair": self.label,
            "status": fmt(self.status),
            "connected_status": fmt(self.connected_status),
        }


def _need(params: dict, *names: str) -> list[int]:
    out = []
    for name in names:
        if name not in params:
            raise InvalidInput(f"missing parameter {name!r}")
        value = params[name]
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidInput(f"parameter {name} must be an integer, got {value!r}")
        out.append(value)
    return out


def classify_pair(family: PairFamily | str, **params) -> SymPairCase:
    try:
        family = PairFamily(family)
    except ValueError as exc:
        raise InvalidInput(f"unknown family {family!r}") from exc
    realizable = (None, None)

    if family is PairFamily.DIAGONAL_KK:
        k = str(params.get("k", "k"))
        return SymPairCase(family, (("k", k),), f"({k} + {k}, diag({k}))", *realizable)
    if family in (PairFamily.E6_F4, PairFamily.E6_SP4):
        if family is PairFamily.E6_F4:
            return SymPairCase(family, (), "(e6, f4)", *realizable)
        return SymPairCase(family, (), "(e6, sp(4))", Reason.INVOLUTION_COUNT, Reason.INVOLUTION_COUNT)
    if family is PairFamily.EQUAL_RANK:
        return _classify_equal_rank(params)

    if family is PairFamily.SO_SUM_ODD:
        p, q = _need(params, "p", "q")
        if not (1 <= p <= q and p + q >= 3):
            raise InvalidInput(f"so-sum-odd needs 1 <= p <= q and p + q >= 3, got p={p}, q={q}")
        label = f"(so({2 * p + 2 * q + 2}), so({2 * p + 1}) + so({2 * q + 1}))"
        reason = Reason.ODD_SUM_WITNESS
        return SymPairCase(family, (("p", p), ("q", q)), label, reason, reason)

    (n,) = _need(params, "n")
    if family is PairFamily.SU_SO_ODD:
        if n < 1:
            raise InvalidInput(f"su-so-odd needs n >= 1, got {n}")
        return SymPairCase(family, (("n", n),), f"(su({2 * n + 1}), so({2 * n + 1}))", *realizable)
    if family is PairFamily.SU_SO_EVEN:
        # n = 1 is the rank-one pair (su(2), so(2)), which is equal rank
        if n < 2:
            raise InvalidInput(f"su-so-even needs n >= 2, got {n}")
        label = f"(su({2 * n}), so({2 * n}))"
        return SymPairCase(family, (("n", n),), label, None, Reason.OUTER_AUTOMORPHISM)
    if family is PairFamily.SU_O:
        if n < 3:
            raise InvalidInput(f"su-o needs n >= 3, got {n}")
        # realized by (SU^{+-1}(n), O(n)); for odd n also by connected SO(n)
        connected = None if n % 2 else Reason.OUTER_AUTOMORPHISM
        return SymPairCase(family, (("n", n),), f"(su({n}), so({n}))", None, connected)
    if family is PairFamily.SU_SP:
        if n < 2:
            raise InvalidInput(f"su-sp needs n >= 2, got {n}")
        return SymPairCase(family, (("n", n),), f"(su({2 * n}), sp({n}))", *realizable)
    if family is PairFamily.SO_SO_ODD:
        if n < 2:
            raise InvalidInput(f"so-so-odd needs n >= 2, got {n}")
        return SymPairCase(family, (("n", n),), f"(so({2 * n}), so({2 * n - 1}))", *realizable)
    raise InvalidInput(f"unhandled family {family!r}")  # pragma: no cover


def _classify_equal_rank(params: dict) -> SymPairCase:
    kind = params.get("kind")
    if kind not in EQUAL_RANK_KINDS:
        raise InvalidInput(f"equal-rank kind must be one of {sorted(EQUAL_RANK_KINDS)}, got {kind!r}")
    names, minima, template = EQUAL_RANK_KINDS[kind]
    values = _need(params, *names)
    for name, value, low in zip(names, values, minima):
        if value < low:
            raise InvalidInput(f"{kind}: {name} must be >= {low}, got {value}")
    if len(names) == 2 and values[0] > values[1] and kind != "so-so-mixed":
        raise InvalidInput(f"{kind}: expected p <= q, got {values}")
    if kind == "so-so-even" and sum(values) < 3:
        raise InvalidInput("so-so-even: so(4) is not simple; need p + q >= 3")
    # (su(2), so(2)) and its isomorphic copies are excluded from the catalog
    if kind == "su-s(u+u)" and sum(values) < 3:
        raise InvalidInput("su-s(u+u): need p + q >= 3")
    if kind == "so-so-mixed" and sum(values) < 2:
        raise InvalidInput("so-so-mixed: need p + q >= 2")
    fmt = dict(zip(names, values))
    if kind == "su-s(u+u)":
        fmt["n"] = fmt["p"] + fmt["q"]
    elif kind == "so-so-even":
        fmt.update(n=2 * (fmt["p"] + fmt["q"]), P=2 * fmt["p"], Q=2 * fmt["q"])
    elif kind == "so-so-mixed":
        fmt.update(n=2 * (fmt["p"] + fmt["q"]) + 1, P=2 * fmt["p"], Q=2 * fmt["q"] + 1)
    elif kind == "so-u":
        fmt["N"] = 2 * fmt["n"]
    elif kind == "sp-sp":
        fmt["n"] = fmt["p"] + fmt["q"]
    params_out = (("kind", kind),) + tuple(zip(names, values))
    reason = Reason.EQUAL_RANK
    return SymPairCase(PairFamily.EQUAL_RANK, params_out, template.format(**fmt), reason, reason)


def catalog(max_param: int = 8) -> list[SymPairCase]:
    """Every supported family instance with integer parameters up to ``max_param``."""
    cases = [classify_pair(PairFamily.DIAGONAL_KK), classify_pair(PairFamily.E6_F4),
             classify_pair(PairFamily.E6_SP4)]
    for n in range(1, max_param + 1):
        cases.append(classify_pair(PairFamily.SU_SO_ODD, n=n))
    for fam, low in ((PairFamily.SU_SO_EVEN, 2), (PairFamily.SU_O, 3), (PairFamily.SU_SP, 2),
                     (PairFamily.SO_SO_ODD, 2)):
        cases.extend(classify_pair(fam, n=n) for n in range(low, max_param + 1))
    for p in range(1, max_param + 1):
        for q in range(p, max_param + 1):
            if p + q >= 3:
                cases.append(classify_pair(PairFamily.SO_SUM_ODD, p=p, q=q))
    for kind, (names, minima, _) in EQUAL_RANK_KINDS.items():
        if not names:
            cases.append(classify_pair(PairFamily.EQUAL_RANK, kind=kind))
        elif len(names) == 1:
            cases.extend(classify_pair(PairFamily.EQUAL_RANK, kind=kind, n=n)
                         for n in range(minima[0], max_param + 1))
        else:
            for p in range(minima[0], max_param + 1):
                for q in range(minima[1], max_param + 1):
                    try:
                        cases.append(classify_pair(PairFamily.EQUAL_RANK, kind=kind, p=p, q=q))
                    except InvalidInput:
                        continue
    return cases


@dataclass(frozen=True)
class Block:
    """A factor of the subgroup torus occupying ``coords`` of the ambient turn vector."""

    group: GroupTag
    start: int

    @property
    def stop(self) -> int:
        return self.start + self.group.rank

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "range": [self.start, self.stop]}


@dataclass(frozen=True)
class PairWitness:
    X: TorusElement
    Y: TorusElement
    ambient: GroupTag
    subgroup_blocks: tuple[Block, ...]
    subgroup_weyl: SignedPermGroupSpec | None = None

    def __post_init__(self):
        covered: set[int] = set()
        for b in self.subgroup_blocks:
            span = set(range(b.start, b.stop))
            if span & covered or b.stop > self.ambient.rank:
                raise InvalidInput("subgroup blocks overlap or exceed the ambient rank")
            covered |= span
        for el in (self.X, self.Y):
            if el.group != self.ambient:
                raise InvalidInput("witness elements must live in the ambient group")
            if self.subgroup_blocks and any(el.turns[i] for i in range(self.ambient.rank) if i not in covered):
                raise InvalidInput("witness element leaves the subgroup torus")

    def block_parts(self, el: TorusElement) -> list[TorusElement]:
        return [TorusElement(el.turns[b.start:b.stop], b.group) for b in self.subgroup_blocks]

    def to_json(self) -> dict:
        return {
            "X": self.X.to_json(),
            "Y": self.Y.to_json(),
            "ambient": self.ambient.to_json(),
            "subgroup_blocks": [b.to_json() for b in self.subgroup_blocks],
        }


def build_witness_so_sum(p: int, q: int, theta=DEFAULT_THETA) -> PairWitness:
    """X ~ Y in SO(2p+2q+2) but not in SO(2p+1) x SO(2q+1).

    X rotates by theta once in each factor, Y rotates twice in the second
    factor.  The two fixed vectors of the factors span the last ambient
    coordinate plane, which is never rotated.
    """
    if not (1 <= p <= q and p + q >= 3):
        raise InvalidInput(f"need 1 <= p <= q and p + q >= 3, got p={p}, q={q}")
    theta = as_turn(theta)
    if theta == 0 or theta == Fraction(1, 2):
        raise DegenerateWitness(f"theta={theta} makes the witness degenerate")
    theta = min(theta, 1 - theta)
    zero = Fraction(0)
    x_turns = [theta] + [zero] * (p - 1) + [theta] + [zero] * (q - 1) + [zero]
    y_turns = [zero] * p + [theta, theta] + [zero] * (q - 2) + [zero]
    ambient = GroupTag.so(2 * p + 2 * q + 2)
    blocks = (Block(GroupTag.so(2 * p + 1), 0), Block(GroupTag.so(2 * q + 1), p))
    return PairWitness(TorusElement(tuple(x_turns), ambient), TorusElement(tuple(y_turns), ambient),
                       ambient, blocks)


def verify_pair_witness(w: PairWitness) -> tuple[bool, bool]:
    """(ambient conjugate, subgroup conjugate); a negative witness gives (True, False)."""
    ambient = conjugate_in(w.X, w.Y, w.ambient)
    if not w.subgroup_blocks and w.subgroup_weyl is not None:
        return ambient, w.Y in w.subgroup_weyl.orbit(w.X)
    sub = all(conjugate_in(x, y, x.group) for x, y in zip(w.block_parts(w.X), w.block_parts(w.Y)))
    return ambient, sub


@dataclass(frozen=True)
class SignedPermGroupSpec:
    """A subgroup of an ambient Weyl group, given by generators.

    ``blocks`` records the block-diagonal subgroup the generators come from,
    when there is one; it is what :func:`verify_pair_witness` checks against.
    """

    ambient: GroupTag
    generators: tuple[SignedPerm, ...]
    blocks: tuple[Block, ...] = field(default=())

    @classmethod
    def block_subgroup(cls, ambient: GroupTag, groups: list[GroupTag]) -> SignedPermGroupSpec:
        """Weyl group of a product of classical groups placed block-diagonally."""
        n = ambient.rank
        if sum(g.rank for g in groups) != n:
            raise InvalidInput("block ranks must add up to the ambient rank")
        blocks, gens, start = [], [], 0
        for g in groups:
            blocks.append(Block(g, start))
            for w in weyl_group(g):
                perm = list(range(n))
                signs = [1] * n
                for i, (src, s) in enumerate(zip(w.perm, w.signs)):
                    perm[start + i] = start + src
                    signs[start + i] = s
                gens.append(SignedPerm(tuple(perm), tuple(signs)))
            start += g.rank
        return cls(ambient, tuple(sorted(set(gens))), tuple(blocks))

    def elements(self) -> frozenset[SignedPerm]:
        n = self.ambient.rank
        seen = {SignedPerm.identity(n)}
        queue = deque(seen)
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = s * g
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        return frozenset(seen)

    def orbit(self, x: TorusElement) -> frozenset[TorusElement]:
        return frozenset(TorusElement(w.apply(x.turns), x.group) for w in self.elements())


def _regular_base_point(ambient: GroupTag) -> TorusElement:
    """Smallest-denominator torus element with a free Weyl orbit.

    Candidates at denominator d have strictly increasing numerators (below
    d/2 for the signed families), tried in lexicographic order.
    """
    n = ambient.rank
    unitary = ambient.family in (Family.UNITARY, Family.SPECIAL_UNITARY)
    d = 1
    while True:
        d += 1
        pool = range(d) if unitary else range(1, (d + 1) // 2)
        for nums in itertools.combinations(pool, n):
            if ambient.family is Family.SPECIAL_UNITARY and sum(nums) % d:
                continue
            x = TorusElement(tuple(Fraction(k, d) for k in nums), ambient)
            if len(weyl_orbit(x)) == ambient.weyl_order:
                return x


def equal_rank_witness(
    ambient: GroupTag, sub_weyl: SignedPermGroupSpec, base_point: TorusElement | None = None
) -> PairWitness:
    """Regular x and a Weyl element w outside W_H with w(x) not W_H-conjugate to x."""
    if sub_weyl.ambient != ambient:
        raise InvalidInput("subgroup Weyl group belongs to a different ambient group")
    full = list(weyl_group(ambient))
    full_set = set(full)
    sub = sub_weyl.elements()
    if not sub <= full_set:
        raise InvalidInput("generators do not lie in the ambient Weyl group")
    if len(sub) == len(full_set):
        raise NoWitness("subgroup Weyl group is the full Weyl group; no equal-rank witness")
    x = _regular_base_point(ambient) if base_point is None else base_point
    if x.group != ambient or len(weyl_orbit(x)) != ambient.weyl_order:
        raise InvalidInput(f"base point {x} is not regular in {ambient.label()}")
    sub_orbit = sub_weyl.orbit(x)
    for w in full:
        if w in sub:
            continue
        y = w(x)
        if y not in sub_orbit:
            return PairWitness(x, y, ambient, sub_weyl.blocks, sub_weyl)
    raise NoWitness(f"no Weyl element moves {x} out of its subgroup orbit")  # pragma: no cover
