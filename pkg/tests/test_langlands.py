import pytest

from crystalcone.cartan import build_cartan, dual_datum
from crystalcone.langlands import (
    comparison_trop,
    comparison_unreduced,
    diagrams_commute,
    implication_certificate,
    lattice_injectivity,
    verify_real_cone_isomorphism,
    verify_twist_compat,
)
from crystalcone.tropical import ConeH, bk_cone

CASES = [("A", 1, (1,)), ("A", 2, (1, 2, 1)), ("C", 2, (1, 2, 1, 2)), ("B", 2, (2, 1, 2, 1))]


def _cones(typ, rank, word):
    d = build_cartan(typ, rank)
    return d, bk_cone(d, word, "reduced").facets(), bk_cone(dual_datum(d), word, "reduced").facets()


def test_c2_diag():
    cm = comparison_trop(build_cartan("C", 2), (1, 2, 1, 2))
    assert cm.diag == (1, 2, 2, 1)
    assert cm.h_block == ((2, 0), (0, 1))
    assert cm.det == 8
    assert not cm.unimodular()


def test_simply_laced_is_identity():
    cm = comparison_trop(build_cartan("A", 3), None)
    assert cm.unimodular() and set(cm.diag) == {1}


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_real_cone_isomorphism(typ, rank, word):
    d, c, cd = _cones(typ, rank, word)
    ok, certs = verify_real_cone_isomorphism(c, cd, comparison_trop(d, word))
    assert ok
    assert all(v >= 0 for y in certs["forward"] + certs["backward"] for v in y)


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_lattice_injectivity(typ, rank, word):
    d, c, cd = _cones(typ, rank, word)
    assert lattice_injectivity(c, cd, comparison_trop(d, word), samples=200)


@pytest.mark.parametrize("typ,rank,word", CASES + [("A", 3, (1, 2, 1, 3, 2, 1))])
def test_diagrams(typ, rank, word):
    assert diagrams_commute(build_cartan(typ, rank), word) == {"hw": True, "wt": True}


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_twist(typ, rank, word):
    assert verify_twist_compat(build_cartan(typ, rank), word, points_per_chamber=20)


def test_wrong_map_rejected():
    d, c, cd = _cones("C", 2, (1, 2, 1, 2))
    wrong = comparison_trop(build_cartan("A", 2), (1, 2, 1))
    assert wrong.diag != comparison_trop(d, (1, 2, 1, 2)).diag
    from crystalcone.langlands import ComparisonMap

    ident = ComparisonMap((1,) * 4, ((1, 0), (0, 1)))
    ok, info = verify_real_cone_isomorphism(c, cd, ident)
    assert not ok and "point" in info


def test_unreduced_dims():
    cm = comparison_unreduced(build_cartan("C", 2), (1, 2, 1, 2))
    assert len(cm.diag) == 6 and cm.h_block == ()


def test_implication_certificate_none():
    cone = ConeH.make([((1, 0), 0)], (), 2)
    assert implication_certificate(cone, (0, 1)) is None
    assert implication_certificate(cone, (2, 0)) == [2]
