from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resonantmv.padic import (
    APPENDIX_WORD,
    OutsideBigCellError,
    PadicScalar,
    appendix_correction,
    appendix_g,
    character_coordinates,
    determinant,
    gauss_decompose,
    identity,
    inverse,
    is_integral,
    iwasawa_algorithm2,
    positive_twist,
    product,
    sample_b,
    sample_rng,
    sbar,
    torus,
    twist,
    valuation,
    verify_appendix,
    verify_geomalgo,
    verify_independence,
    x_simple,
    y_chart,
    y_simple,
    z_word,
)

F = Fraction
nonzero = st.fractions(min_value=-20, max_value=20, max_denominator=30).filter(lambda x: x != 0)


def test_valuation():
    assert valuation(F(50), 5) == 2
    assert valuation(F(3, 25), 5) == -2
    assert valuation(F(0), 5) == float("inf")
    x = PadicScalar(F(10), 5)
    assert (x * x).val == 2
    assert (x / 25).val == -1
    assert PadicScalar(F(7), 5).is_unit()


def test_generators():
    assert y_simple(2, 1, 3) == [[1, 0], [3, 1]]
    assert x_simple(2, 1, 3) == [[1, 3], [0, 1]]
    assert sbar(2, 1) == [[0, -1], [1, 0]]
    assert torus(2, F(3), (0, 1)) == [[3, 0], [0, F(1, 3)]]
    assert determinant(sbar(4, 2)) == 1


def test_gauss_identity():
    U, t, L = gauss_decompose(identity(3))
    assert U == t == L == identity(3)


@settings(max_examples=40)
@given(st.lists(nonzero, min_size=3, max_size=3), st.lists(nonzero, min_size=3, max_size=3))
def test_gauss_recomposition(a, b):
    M = product(y_chart(3, (1, 2, 1), a), x_simple(3, 1, b[0]), x_simple(3, 2, b[1]), torus(3, b[2], (0, 1)))
    try:
        U, t, L = gauss_decompose(M)
    except OutsideBigCellError:
        return
    assert product(U, t, L) == M
    assert all(U[i][i] == 1 and L[i][i] == 1 for i in range(3))


def test_gauss_outside_big_cell():
    with pytest.raises(OutsideBigCellError):
        gauss_decompose([[1, 1], [1, 0]])
    # a zero in the top-left corner is harmless for this factorization order
    U, t, L = gauss_decompose([[0, 1], [-1, 1]])
    assert product(U, t, L) == [[0, 1], [-1, 1]]


@settings(max_examples=25)
@given(st.lists(nonzero, min_size=3, max_size=3))
def test_twist_involution_identity(b):
    v = y_chart(3, (1, 2, 1), b)
    try:
        e = twist(v)
        back = positive_twist(twist(positive_twist(e)))
    except OutsideBigCellError:
        return
    assert back == v


def test_positive_twist_fixes_x():
    X = x_simple(3, 2, F(7))
    assert positive_twist(X) == X
    T = torus(3, F(5), (1, 2))
    assert positive_twist(T) == inverse(T)


def test_sl2_pipeline():
    u = z_word((1,), (F(5),), 2)
    tr = iwasawa_algorithm2((1,), u, 5, 2)
    assert tr.w == [F(1, 5)]
    assert tr.m == [1]


def test_integral_case():
    b = (F(1), F(2), F(3), F(-1), F(4), F(6))
    u = z_word(APPENDIX_WORD, b, 4)
    assert is_integral(u, 5)
    tr = iwasawa_algorithm2(APPENDIX_WORD, u, 5, 4)
    assert tr.w == [1] * 6
    assert tr.m == [0] * 6
    assert all(valuation(t, 5) >= 0 for t in tr.t)
    assert is_integral(tr.k_part, 5) and determinant(tr.k_part) == 1
    assert all(valuation(h, 5) >= 0 for h in appendix_g(tr.t, tr.w))


def test_positive_valuations_give_inverse_coordinates():
    rng = sample_rng(7, 0)
    b = sample_b(rng, 5, [1, 2, 1])
    tr = iwasawa_algorithm2((1, 2, 1), z_word((1, 2, 1), b, 3), 5, 3)
    assert [w * x for w, x in zip(tr.w, b)] == [1, 1, 1]
    assert tr.m == [1, 2, 1]


def test_iwasawa_factorization_is_exact():
    rng = sample_rng(3, 1)
    b = sample_b(rng, 5, [-1, 0, 2, 1, 0, 1])
    u = z_word(APPENDIX_WORD, b, 4)
    tr = iwasawa_algorithm2(APPENDIX_WORD, u, 5, 4)
    assert product(tr.p1, tr.k_part) == u
    assert all(m >= 0 for m in tr.m)
    assert tr.m == [-valuation(w, 5) for w in tr.w]


@pytest.mark.parametrize("letters,n", [((1, 2, 1), 3), ((2, 1, 2), 3)])
def test_geom_algo_small(letters, n):
    rep = verify_geomalgo(letters, n, samples=20, seed=11)
    assert rep.ok


def test_geom_algo_rejects_bad_word():
    with pytest.raises(ValueError):
        verify_geomalgo((1, 1, 2), 3, samples=1)


@pytest.mark.parametrize("letters,n", [((1, 2, 1), 3), ((2, 1, 2), 3), ((1, 2, 3, 1, 2, 1), 4)])
def test_boundary_polynomials_match_subdiagonal(letters, n):
    rep = verify_independence(letters, n, samples=15, seed=5)
    assert rep.ok
    assert rep.patterns > 1


def test_sampling_is_deterministic():
    a = sample_b(sample_rng(1, 2), 5, [0, 1, 2])
    b = sample_b(sample_rng(1, 2), 5, [0, 1, 2])
    assert a == b
    assert [valuation(x, 5) for x in a] == [0, 1, 2]


def test_appendix_h2_h3_and_positive_m4():
    rep = verify_appendix(samples=24, seed=2)
    assert rep.per_index[1] == rep.per_index[2] == rep.samples
    assert rep.m4_zero > 0


def test_appendix_correction_vanishes_when_t4_is_w4():
    t = [F(k) for k in range(1, 7)]
    assert appendix_correction(t, t) == 0


def test_appendix_first_coordinate_when_m4_positive():
    rng = sample_rng(0, 99)
    b = sample_b(rng, 5, [0, 1, 0, 2, 1, 0])
    tr = iwasawa_algorithm2(APPENDIX_WORD, z_word(APPENDIX_WORD, b, 4), 5, 4)
    assert tr.m[3] > 0
    assert character_coordinates(tr.u)[0] == appendix_g(tr.t, tr.w)[0]


def test_appendix_first_coordinate_observed_sign():
    # on m_4 = 0 the matrix entry carries the correction with a minus sign
    rep = verify_appendix(samples=24, seed=2)
    assert rep.negated_matches == rep.m4_zero
