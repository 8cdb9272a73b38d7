import pytest
from hypothesis import given
from hypothesis import strategies as st

from resonantmv.g2eval import g2_word_data, mv_integral, s_values
from resonantmv.lusztig import enumerate_crystal, weight_of
from resonantmv.resonance import (
    DATUM_LOWER,
    LOWER,
    RAISE,
    ResonanceArray,
    ResonanceError,
    array_of,
    crystal_check,
    disjoint_families,
    e1,
    e2,
    enumerate_families,
    f1,
    f2,
    family,
    family_sum,
    head,
    head_datum,
    is_resonant_datum,
    relevant_families,
    truncation_expected,
)

GRID = [(a, b) for a in range(3) for b in range(3)]

arrays = st.builds(
    ResonanceArray.make,
    st.integers(0, 5), st.integers(0, 5), st.integers(0, 12), st.integers(0, 5),
    st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5),
)


def test_array_of_example():
    A = array_of((0, 2), (0, 0, 2, 2, 2, 0))
    assert A.top == (0, 2, 2, 2, 0)
    assert A.mid == (1, 1, 1)
    assert A.decoration == 1
    assert A.weight == 16
    assert A.weight == weight_of(g2_word_data(), (0, 0, 2, 2, 2, 0))[0]


def test_array_of_rejects_non_resonant():
    with pytest.raises(ResonanceError):
        array_of((0, 2), (0, 0, 2, 2, 1, 0))


def test_in_crystal_resonant_has_decoration_zero():
    for lam in GRID:
        for m in enumerate_crystal(g2_word_data(), (lam[0] + 1, lam[1] + 1)):
            s = s_values(lam, m)
            if m[2] == m[4] and s[2] == s[3] == 0:
                assert array_of(lam, m).decoration == 0


def test_operator_examples():
    A = ResonanceArray.make(2, 1, 3, 2, 0, 1, 0, 0)
    assert e1(A) == ResonanceArray.make(1, 1, 4, 1, 0, 2, 0, 1)
    assert e1(ResonanceArray.make(0, 1, 3, 2, 0, 1, 0, 0)) is None
    assert f2(ResonanceArray.make(0, 1, 2, 2, 1, 1, 1, 1)) is None
    assert e2(ResonanceArray.make(0, 0, 3, 2, 1, 1, 1, 1)) is None
    assert f1(ResonanceArray.make(0, 0, 3, 2, 1, 1, 1, 0)) is None


def test_array_shape_enforced():
    with pytest.raises(ResonanceError):
        ResonanceArray((0, 1, 0, 2, 0), (0, 0, 0), 0)
    with pytest.raises(ResonanceError):
        ResonanceArray.make(0, 0, 0, 0, -1, 0, 0, 0)


@given(arrays)
def test_operators_preserve_weight_and_invert(A):
    for i in (1, 2):
        B = LOWER[i](A)
        if B is not None:
            assert B.weight == A.weight
            assert RAISE[i](B) == A
            assert B.decoration == A.decoration - 1
        C = RAISE[i](A)
        if C is not None:
            assert C.weight == A.weight
            assert LOWER[i](C) == A or min(C.mid + (C.decoration,)) == 0


@given(arrays)
def test_head_is_idempotent_and_raises_decoration(A):
    H = head(A)
    assert head(H) == H
    assert e1(H) is None and e2(H) is None
    assert H.decoration >= A.decoration


def test_head_example():
    lam, m = (0, 2), (0, 0, 2, 2, 2, 0)
    A = array_of(lam, m)
    assert e1(A) is None
    assert head(A).top == (0, 0, 8, 0, 0)
    assert head_datum(lam, m) == (0, 0, 0, 8, 0, 0)
    assert array_of(lam, head_datum(lam, m)) == head(A)


@pytest.mark.parametrize("lam", GRID)
def test_datum_operators_commute_with_arrays(lam):
    for fam in relevant_families(lam) + disjoint_families(lam, 3):
        for n in fam.members:
            A = array_of(lam, n)
            for i in (1, 2):
                B = LOWER[i](A)
                if B is not None:
                    assert array_of(lam, DATUM_LOWER[i](n)) == B


def test_totally_resonant_head():
    fam = family((0, 0), (0, 0, 0, 2, 0, 0))
    assert fam.totally_resonant
    assert fam.head_array.decoration == 1


def test_singleton_family():
    lam = (0, 0)
    singles = [f for f in relevant_families(lam) if len(f.members) == 1]
    assert singles
    for fam in singles:
        (n,) = fam.members
        assert fam.head_array.decoration == 0
        assert family_sum(lam, fam) == mv_integral(lam, n).coefficient


def test_family_rejects_non_head():
    with pytest.raises(ResonanceError):
        family((0, 2), (0, 0, 2, 2, 2, 0))


@pytest.mark.parametrize("lam", GRID)
def test_disjoint_family_grid(lam):
    for fam in disjoint_families(lam, 4):
        s = s_values(lam, fam.head)
        want = {(t1, t2) for t1 in range(s[5] + 2) for t2 in range(min(s[1], s[4]) + 2)}
        assert set(fam.lowering.values()) == want
        assert fam.highest_weight() == (s[5] + 1, min(s[1], s[4]) + 1)
        assert not fam.in_crystal


@pytest.mark.parametrize("lam", GRID)
def test_families_have_constant_weight_and_m1(lam):
    for fam in relevant_families(lam) + disjoint_families(lam, 3):
        for n in fam.members:
            assert weight_of(g2_word_data(), n) == fam.weight
            assert n[0] == fam.m1
            if n[3] == 0:
                assert fam.arrays[n].decoration == 0
                assert n in fam.in_crystal


@pytest.mark.parametrize("lam", GRID)
def test_disjoint_families_pass_axioms_and_vanish(lam):
    for fam in disjoint_families(lam, 6):
        rep = crystal_check(fam)
        assert rep.passed, rep.violation
        assert not family_sum(lam, fam)


def test_zero_weight_disjoint_singleton_passes():
    fams = [f for lam in GRID for f in disjoint_families(lam, 6) if f.highest_weight() == (0, 0)]
    for fam in fams:
        assert len(fam.members) == 1
        assert crystal_check(fam).passed


@pytest.mark.parametrize("lam", GRID)
def test_reported_truncation_matches_decoration_bound(lam):
    for fam in relevant_families(lam):
        assert crystal_check(fam).truncated == truncation_expected(fam)


def test_relevant_families_cover_decoration_zero_members():
    for lam in GRID:
        covered = {n for fam in relevant_families(lam) for n in fam.members}
        for m in enumerate_crystal(g2_word_data(), (lam[0] + 1, lam[1] + 1)):
            if is_resonant_datum(lam, m) and array_of(lam, m).decoration == 0:
                assert m in covered


def test_zero_cap_keeps_only_relevant():
    relevant, disjoint = enumerate_families((1, 1), 0)
    assert relevant and not disjoint
    assert all(f.lambda_relevant for f in relevant)


def test_lambda_zero_relevant_families():
    # checked by hand from the operator tables
    got = [(f.head, len(f.members), f.totally_resonant) for f in relevant_families((0, 0))]
    assert got == [
        ((0, 0, 0, 0, 0, 0), 1, True), ((0, 0, 0, 1, 0, 1), 1, False),
        ((0, 0, 0, 2, 0, 0), 2, True), ((0, 0, 0, 3, 0, 1), 2, False),
        ((0, 0, 0, 4, 0, 0), 4, True), ((0, 1, 0, 0, 0, 0), 1, False),
        ((0, 1, 0, 2, 0, 0), 2, False), ((1, 0, 0, 0, 0, 0), 1, True),
        ((1, 0, 0, 1, 0, 1), 1, False), ((1, 0, 0, 2, 0, 0), 2, True),
        ((1, 0, 0, 3, 0, 1), 2, False), ((1, 0, 0, 4, 0, 0), 4, True),
        ((2, 0, 0, 1, 0, 1), 1, False), ((2, 0, 0, 3, 0, 1), 2, False),
    ]
    fam = family((0, 0), (0, 0, 0, 4, 0, 0))
    assert set(fam.lowering.values()) == {(0, 0), (1, 0), (0, 1), (1, 1)}
