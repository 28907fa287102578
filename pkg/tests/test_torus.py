from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_orbit
from scf.errors import InvalidInput, Refusal
from scf.torus import (
    CanonicalForm,
    EmbeddingRule,
    Family,
    GroupTag,
    TorusElement,
    canonical_form,
    conjugate_in,
    embed,
    fusion_elementwise,
    fusion_witness,
    parse_turn,
    torsion_elements,
    weyl_orbit,
)

B2, D2 = GroupTag.so(5), GroupTag.so(4)
FAMILIES = [Family.UNITARY, Family.SPECIAL_UNITARY, Family.ODD_ORTHOGONAL, Family.SYMPLECTIC,
            Family.EVEN_ORTHOGONAL, Family.FULL_ORTHOGONAL]


def el(turns, group):
    return TorusElement(tuple(F(t) for t in turns), group)


def _signed(group):
    return group.family not in (Family.UNITARY, Family.SPECIAL_UNITARY)


class TestTypes:
    def test_turns_are_reduced(self):
        x = el(["7/5", "-1/3"], B2)
        assert x.turns == (F(2, 5), F(2, 3))

    def test_wrong_length(self):
        with pytest.raises(InvalidInput):
            el(["1/3"], B2)

    def test_su_sum_constraint(self):
        el(["1/3", "2/3"], GroupTag.su(2))
        with pytest.raises(InvalidInput):
            el(["1/3", "1/3"], GroupTag.su(2))

    def test_full_orthogonal_rank(self):
        assert GroupTag.o(7).rank == 3 and GroupTag.o(7).size == 7
        with pytest.raises(InvalidInput):
            GroupTag(Family.FULL_ORTHOGONAL, 2, 7)

    @pytest.mark.parametrize("text", ["1/0", "abc", "0.5", ""])
    def test_bad_turns(self, text):
        with pytest.raises(InvalidInput):
            parse_turn(text)

    def test_json_round_trip(self):
        x = el(["1/5", "0"], GroupTag.o(5))
        assert TorusElement.from_json(x.to_json()) == x
        assert x.to_json() == {"turns": ["1/5", "0"], "group": {"family": "FullOrthogonal", "rank": 2, "size": 5}}

    def test_canonical_json(self):
        cf = canonical_form(el(["2/3", "1/4"], D2))
        assert cf.to_json()["chirality"] == "odd"
        assert "chirality" not in canonical_form(el(["1/3", "0"], D2)).to_json()


class TestCanonicalForm:
    def test_d_with_zero(self):
        assert canonical_form(el(["1/3", "0"], D2)) == CanonicalForm((F(1, 3), F(0)), D2, None)

    def test_b_folds(self):
        assert canonical_form(el(["2/3", "1/4"], B2)).turns == (F(1, 3), F(1, 4))

    def test_d_chirality(self):
        cf = canonical_form(el(["2/3", "1/4"], D2))
        assert cf.turns == (F(1, 3), F(1, 4)) and cf.chirality == "odd"
        # oracle: [2/3,1/4] and [1/3,3/4] share an orbit, [1/3,1/4] does not
        orbit = brute_orbit([F(2, 3), F(1, 4)], signed=True, even_flips=True)
        assert (F(1, 3), F(3, 4)) in orbit
        assert (F(1, 3), F(1, 4)) not in orbit

    def test_unitary_sorts(self):
        assert canonical_form(el(["1/5", "2/5"], GroupTag.u(2))).turns == (F(2, 5), F(1, 5))


class TestConjugateIn:
    def test_permutation_u2(self):
        assert conjugate_in(el(["1/5", "2/5"], GroupTag.u(2)), el(["2/5", "1/5"], GroupTag.u(2)), GroupTag.u(2))

    def test_d2_with_zero(self):
        x, y = el(["1/5", "0"], D2), el(["4/5", "0"], D2)
        assert conjugate_in(x, y, D2)
        assert y.turns in brute_orbit(x.turns, signed=True, even_flips=True)

    def test_d2_chiral_pair(self):
        x, y = el(["1/5", "1/10"], D2), el(["4/5", "1/10"], D2)
        assert not conjugate_in(x, y, D2)
        assert y.turns not in brute_orbit(x.turns, signed=True, even_flips=True)

    def test_u1_trivial_weyl(self):
        assert not conjugate_in(el(["1/3"], GroupTag.u(1)), el(["2/3"], GroupTag.u(1)))

    def test_group_mismatch(self):
        with pytest.raises(InvalidInput):
            conjugate_in(el(["1/3", "0"], D2), el(["1/3", "0"], B2), D2)


class TestWeylOrbit:
    def test_fixed_point(self):
        assert weyl_orbit(el([0, 0], B2)) == {el([0, 0], B2)}

    def test_b2_orbit(self):
        expected = {el(t, B2) for t in (["1/4", 0], ["3/4", 0], [0, "1/4"], [0, "3/4"])}
        assert weyl_orbit(el(["1/4", 0], B2)) == expected

    def test_u1(self):
        assert weyl_orbit(el(["1/3"], GroupTag.u(1))) == {el(["1/3"], GroupTag.u(1))}

    def test_rank_limit(self):
        with pytest.raises(Refusal):
            weyl_orbit(el([0] * 7, GroupTag.so(15)))
        assert len(weyl_orbit(el([0] * 7, GroupTag.so(15)), limit=7)) == 1

    @pytest.mark.parametrize("family", FAMILIES)
    def test_matches_brute_force(self, family):
        group = GroupTag(family, 3)
        for x in torsion_elements(group, 4):
            got = {y.turns for y in weyl_orbit(x)}
            assert got == brute_orbit(x.turns, _signed(group), family is Family.EVEN_ORTHOGONAL)


def groups(max_rank=4):
    return st.builds(GroupTag, st.sampled_from(FAMILIES), st.integers(1, max_rank))


@st.composite
def elements(draw, max_rank=4, max_den=12):
    group = draw(groups(max_rank))
    turns = [F(draw(st.integers(0, 143)), draw(st.integers(1, max_den))) for _ in range(group.rank)]
    if group.family is Family.SPECIAL_UNITARY:
        turns[-1] = -sum(turns[:-1])
    return TorusElement(tuple(turns), group)


@settings(max_examples=300, deadline=None)
@given(elements())
def test_canonical_idempotent(x):
    cf = canonical_form(x)
    assert canonical_form(cf.representative()) == cf
    assert cf.representative() in weyl_orbit(x)


@settings(max_examples=200, deadline=None)
@given(elements())
def test_orbit_size_divides_weyl_order(x):
    assert x.group.weyl_order % len(weyl_orbit(x)) == 0


@settings(max_examples=300, deadline=None)
@given(elements(), st.data())
def test_conjugacy_matches_orbit(x, data):
    orbit = sorted(weyl_orbit(x), key=lambda e: e.turns)
    y = data.draw(st.sampled_from(orbit)) if data.draw(st.booleans()) else data.draw(elements())
    if y.group != x.group:
        y = orbit[0]
    assert conjugate_in(x, y, x.group) == (y in orbit)


class TestFusion:
    @pytest.mark.parametrize("n,q", [(2, 6), (3, 5)])
    def test_so_odd_in_so_even(self, n, q):
        assert fusion_elementwise(GroupTag.so(2 * n - 1), GroupTag.so(2 * n), EmbeddingRule.APPEND_ZERO, q)

    @pytest.mark.parametrize("q", [1, 4, 7])
    def test_identity(self, q):
        assert fusion_elementwise(GroupTag.so(3), GroupTag.so(3), EmbeddingRule.IDENTITY, q)

    def test_so_even_in_so_odd_fuses(self):
        # dropping the parity bit fuses the two chiral classes
        x, y = fusion_witness(GroupTag.so(4), GroupTag.so(5), EmbeddingRule.IDENTITY, 5)
        assert not conjugate_in(x, y) and conjugate_in(embed(x, GroupTag.so(5), "identity"),
                                                       embed(y, GroupTag.so(5), "identity"))

    def test_unsupported(self):
        with pytest.raises(Refusal):
            fusion_elementwise(GroupTag.sp(2), GroupTag.so(6), EmbeddingRule.APPEND_ZERO, 3)
        with pytest.raises(Refusal):
            fusion_elementwise(GroupTag.so(5), GroupTag.so(9), EmbeddingRule.APPEND_ZERO, 3)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_restriction_monotone(self, n):
        sub, amb = GroupTag.so(2 * n - 1), GroupTag.so(2 * n)
        elems = list(torsion_elements(sub, 4))
        for x in elems:
            for y in elems:
                if conjugate_in(x, y):
                    assert conjugate_in(embed(x, amb, "append_zero"), embed(y, amb, "append_zero"))


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("rank", [1, 2, 3])
def test_diagonal_pair_fusion(family, rank):
    # W(G x G) = W x W acts coordinatewise on (x, x); the diagonal subgroup must see the same classes
    group = GroupTag(family, rank)
    elems = list(torsion_elements(group, 6 if rank < 3 else 4))
    orbits = {x: weyl_orbit(x) for x in elems}
    for x in elems:
        for y in elems:
            product_conj = y in orbits[x] and y in orbits[x]
            assert product_conj == conjugate_in(x, y)
