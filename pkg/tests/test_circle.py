import pytest
from hypothesis import given, settings, strategies as st

from oracles import first_circle_witness
from scf.circle import (
    CongruenceWitness,
    WeightSequence,
    decide_scf_circle,
    default_modulus_bound,
    make_witness,
    negation_symmetric,
    normalize_weights,
    realized_elements,
    reflection_constant,
    verify_witness_circle,
)
from scf.errors import InvalidInput
from scf.torus import conjugate_in
from scf.verdict import Fails, Holds


@pytest.mark.parametrize("raw,expected", [([4, 2, 6], (1, 2, 3)), ([1], (1,)), ([0, 3, 3], (0, 1, 1))])
def test_normalize(raw, expected):
    assert normalize_weights(raw).weights == expected


@pytest.mark.parametrize("raw", [[0, 0], [], [-1, 2]])
def test_normalize_rejects(raw):
    with pytest.raises(InvalidInput):
        normalize_weights(raw)


def test_weight_sequence_invariants():
    with pytest.raises(InvalidInput):
        WeightSequence((2, 1))
    with pytest.raises(InvalidInput):
        WeightSequence((2, 4))


@pytest.mark.parametrize("n", range(2, 9))
def test_reflection_family_fails(n):
    a = WeightSequence(tuple(range(1, n + 1)))
    verdict = decide_scf_circle(a, n + 2)
    assert isinstance(verdict, Fails)
    w = verdict.witness
    assert (w.m, w.k) == first_circle_witness(a.weights, n + 2)
    assert w.m <= n + 1
    assert verify_witness_circle(a, w)


@pytest.mark.parametrize("n", range(3, 7))
def test_repeated_one_family_holds(n):
    a = WeightSequence((1,) + tuple(range(1, n)))
    assert decide_scf_circle(a, 300) == Holds(300)


def test_one_three():
    # {3, 9} == {3, 1} (mod 8), but (4, 3) already works: {3, 9} == {3, 1} (mod 4)
    a = WeightSequence((1, 3))
    verdict = decide_scf_circle(a, 10)
    assert (verdict.witness.m, verdict.witness.k) == first_circle_witness((1, 3), 10) == (4, 3)
    assert verify_witness_circle(a, make_witness(a, 8, 3))


def test_default_bound():
    a = WeightSequence((1, 2))
    assert default_modulus_bound(a) == 8
    assert isinstance(decide_scf_circle(a), Fails)


class TestVerify:
    def test_valid(self):
        a = WeightSequence((1, 2))
        assert verify_witness_circle(a, make_witness(a, 3, 2))
        hz, hw = realized_elements(a, 3, 2)
        assert [str(t) for t in hz.turns] == ["1/3", "2/3"] and [str(t) for t in hw.turns] == ["2/3", "1/3"]

    def test_residue_mismatch(self):
        assert not verify_witness_circle(WeightSequence((1, 2)), CongruenceWitness(4, 3, (0, 1)))

    @pytest.mark.parametrize("m,k", [(3, 2), (5, 4), (7, 3)])
    def test_singleton_never(self, m, k):
        assert not verify_witness_circle(WeightSequence((1,)), CongruenceWitness(m, k, (0,)))

    def test_bad_permutation(self):
        assert not verify_witness_circle(WeightSequence((1, 2)), CongruenceWitness(3, 2, (0, 1)))

    def test_make_witness_rejects(self):
        with pytest.raises(InvalidInput):
            make_witness(WeightSequence((1, 2)), 4, 3)


class TestNegationSymmetric:
    def test_reflection(self):
        for n in range(1, 9):
            a = WeightSequence(tuple(range(1, n + 1)))
            assert negation_symmetric(a) and reflection_constant(a) == n + 1

    def test_not_symmetric(self):
        a = WeightSequence((1, 1, 2))
        assert not negation_symmetric(a)
        # exhaustive constants, independent of the shortcut c = min + max
        assert not any(sorted(c - x for x in a) == list(a.weights) for c in range(2, 5))

    def test_singleton(self):
        assert reflection_constant(WeightSequence((1,))) == 2

    @pytest.mark.parametrize("weights", [(1, 2), (1, 2, 3), (1, 3), (0, 1, 2, 3), (1, 2, 4, 5), (2, 3, 4, 5, 6, 7)])
    def test_symmetric_gives_reflection_witness(self, weights):
        a = WeightSequence(weights)
        c = reflection_constant(a)
        assert c is not None
        for m in (d for d in range(3, c + 1) if c % d == 0):
            assert verify_witness_circle(a, make_witness(a, m, m - 1))
        if c >= 3:
            assert isinstance(decide_scf_circle(a, c), Fails)


weights = st.lists(st.integers(0, 12), min_size=1, max_size=5).filter(any)


@settings(max_examples=150, deadline=None)
@given(weights, st.integers(3, 60))
def test_fails_sound_and_first(raw, m_max):
    a = normalize_weights(raw)
    verdict = decide_scf_circle(a, m_max)
    hit = first_circle_witness(a.weights, m_max)
    if hit is None:
        assert verdict == Holds(m_max)
    else:
        assert (verdict.witness.m, verdict.witness.k) == hit
        assert verify_witness_circle(a, verdict.witness)
        hz, hw = realized_elements(a, *hit)
        assert conjugate_in(hz, hw) and hz != hw


@settings(max_examples=80, deadline=None)
@given(weights, st.integers(2, 7), st.integers(3, 40))
def test_scale_invariance(raw, c, m_max):
    assert decide_scf_circle(normalize_weights([c * x for x in raw]), m_max) == \
        decide_scf_circle(normalize_weights(raw), m_max)


@settings(max_examples=60, deadline=None)
@given(weights, st.integers(3, 40), st.integers(0, 20))
def test_bound_monotone(raw, m_max, extra):
    a = normalize_weights(raw)
    small, large = decide_scf_circle(a, m_max), decide_scf_circle(a, m_max + extra)
    if isinstance(large, Fails) and large.witness.m <= m_max:
        assert small == large
    if isinstance(small, Fails):
        assert large == small


def test_workers_agree():
    a = WeightSequence((1, 4, 9))
    assert decide_scf_circle(a, 80, workers=2) == decide_scf_circle(a, 80, workers=1)
