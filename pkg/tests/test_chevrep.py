import numpy as np
import pytest

from resonantmv.chevrep import (
    RepresentationError,
    TrailError,
    fundamental_rep,
    generalized_minor,
    highest_weight_module,
    trails_from_minor,
    weyl_dimension,
)
from resonantmv.exactpoly import LaurentPoly
from resonantmv.rootsys import build_cartan

G2 = build_cartan("G", 2)
WORD = (2, 1, 2, 1, 2, 1)
B = tuple(f"b{k}" for k in range(1, 7))


def _poly(terms):
    return LaurentPoly(B, terms)


@pytest.mark.parametrize("series,rank", [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)])
def test_fundamental_modules_satisfy_relations(series, rank):
    d = build_cartan(series, rank)
    for i in range(1, rank + 1):
        rep = fundamental_rep(d, i)
        rep.check_relations()
        assert rep.dim == weyl_dimension(d, rep.highest_weight)


def test_g2_fundamental_dimensions():
    assert fundamental_rep(G2, 1).dim == 14
    assert fundamental_rep(G2, 2).dim == 7


def test_adjoint_a2_weights():
    rep = highest_weight_module(build_cartan("A", 2), (1, 1))
    assert rep.dim == 8
    assert len(rep.index_of_weight((0, 0))) == 2


def test_sbar_moves_highest_weight_vector():
    rep = fundamental_rep(G2, 2)
    for i in (1, 2):
        s, si = rep.sbar(i), rep.sbar_inverse(i)
        assert np.array_equal(s.dot(si), np.identity(rep.dim, dtype=object))


def test_g2_long_minor_is_single_trail():
    rep = fundamental_rep(G2, 1)
    w0 = G2.longest_element
    got = generalized_minor(rep, G2.identity(), w0 * G2.simple_reflection(1), WORD)
    assert got == _poly({(0, 1, 3, 2, 3, 0): 1})
    got = generalized_minor(rep, G2.identity(), w0, WORD)
    assert got == _poly({(0, 1, 3, 2, 3, 1): 1})


def test_g2_short_minor_six_terms():
    rep = fundamental_rep(G2, 2)
    w0 = G2.longest_element
    got = generalized_minor(rep, G2.identity(), w0 * G2.simple_reflection(2), WORD)
    want = _poly({
        (1, 1, 2, 1, 0, 0): 1, (1, 1, 0, 0, 2, 1): 1, (1, 0, 0, 1, 2, 1): 1,
        (1, 1, 1, 0, 1, 1): 2, (1, 1, 2, 0, 0, 1): 1, (0, 0, 1, 1, 2, 1): 1,
    })
    assert got == want
    assert generalized_minor(rep, G2.identity(), w0, WORD) == _poly({(1, 1, 2, 1, 1, 0): 1})


def test_identity_minor_is_one():
    rep = fundamental_rep(G2, 2)
    assert generalized_minor(rep, G2.identity(), G2.identity(), WORD) == LaurentPoly.constant(B, 1)


def test_trails_telescope():
    rep = fundamental_rep(G2, 2)
    target = G2.longest_element * G2.simple_reflection(2)
    minor = generalized_minor(rep, G2.identity(), target, WORD)
    trails = trails_from_minor(minor, WORD, rep.highest_weight, target.act_on_weight(rep.highest_weight), G2)
    assert len(trails) == 6
    assert sorted(t.d for t in trails) == [1, 1, 1, 1, 1, 2]


def test_trails_reject_bad_target():
    rep = fundamental_rep(G2, 2)
    minor = generalized_minor(rep, G2.identity(), G2.longest_element, WORD)
    with pytest.raises(TrailError):
        trails_from_minor(minor, WORD, rep.highest_weight, rep.highest_weight, G2)


def test_out_of_range_node():
    with pytest.raises(RepresentationError):
        fundamental_rep(G2, 3)


@pytest.mark.parametrize("series,rank,hw,dim", [
    ("A", 2, (1, 1), 8), ("A", 3, (0, 1, 0), 6), ("B", 2, (1, 0), 5),
    ("B", 2, (0, 1), 4), ("G", 2, (1, 1), 64), ("G", 2, (2, 0), 77),
])
def test_weyl_dimension_values(series, rank, hw, dim):
    assert weyl_dimension(build_cartan(series, rank), hw) == dim
