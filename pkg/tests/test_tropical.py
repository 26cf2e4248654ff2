import random
from fractions import Fraction

import pytest

from crystalcone import linalg
from crystalcone.cartan import build_cartan
from crystalcone.cluster import mutate, seed_from_word
from crystalcone.errors import PositivityViolation
from crystalcone.laurent import LaurentPoly
from crystalcone.symgroup import bk_potential_in_chart, build_chart
from crystalcone.tropical import (
    ConeH,
    bk_cone,
    hw_trop,
    string_cone,
    trop_chart_change,
    tropicalize,
    wt_trop,
)

F = Fraction


def test_a1_bk_tropical():
    ch = build_chart(build_cartan("A", 1), None, "cluster")
    t = tropicalize(bk_potential_in_chart(ch))
    for x in [(0, -1), (3, -5), (-2, 1)]:
        assert t(x) == min(x[0] - x[1], -x[0] - x[1])


def test_monomial_tropicalizes_to_covector():
    m = LaurentPoly.monomial(3, (2, -1, 0))
    assert tropicalize(m)((1, 1, 7)) == 1


def test_negative_coefficient_rejected():
    x = LaurentPoly.var(2, 0)
    with pytest.raises(PositivityViolation):
        tropicalize(x - LaurentPoly.var(2, 1))


def test_product_rule_random():
    rng = random.Random(11)
    for _ in range(100):
        terms = lambda: sum(  # noqa: E731
            (LaurentPoly.monomial(2, (rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(1, 4)) for _ in range(rng.randint(1, 3))),
            LaurentPoly.zero(2),
        )
        f, g = terms(), terms()
        pt = (F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5)))
        assert tropicalize(f * g)(pt) == tropicalize(f)(pt) + tropicalize(g)(pt)


def test_a1_cone():
    cone = bk_cone(build_cartan("A", 1), None, "cluster")
    assert set(n for n, _ in cone.halfspaces) == {(-1, -1), (1, -1)}
    assert cone.contains((0, -1), strict=True)
    assert not cone.contains((0, 0), strict=True)
    assert cone.contains((0, 0))


def test_a2_cone_interior():
    cone = bk_cone(build_cartan("A", 2), (1, 2, 1), "cluster")
    assert cone.ambient_dim == 5
    assert cone.has_interior()


def test_string_cone_a1():
    cone = string_cone(build_cartan("A", 1), (1,))
    assert cone.ambient_dim == 1
    assert cone.contains((3,)) and not cone.contains((-1,))


@pytest.mark.parametrize("word", [(1, 2, 1), (2, 1, 2)])
def test_string_cone_a2_unimodular_simplicial(word):
    cone = string_cone(build_cartan("A", 2), word).facets()
    normals = [list(n) for n, _ in cone.halfspaces]
    assert len(normals) == 3
    # {t1 >= 0, t3 >= 0, t2 >= t3} has a unimodular normal matrix as well
    assert abs(linalg.det(normals)) == 1
    assert cone.has_interior()


def test_hw_wt_a1():
    d = build_cartan("A", 1)
    assert hw_trop(d, (1,), "cluster") == [[0, -1]]
    assert wt_trop(d, (1,), "factorization") == [[1, 0]]


def test_chart_change_identity_and_mutation():
    s = seed_from_word(build_cartan("A", 2), (1, 2, 1))
    ident = trop_chart_change(s, s)
    assert len(ident.chambers) == 1
    m = trop_chart_change(s, mutate(s, 1))
    assert len(m.chambers) == 2
    x = [F(1), F(-2), F(3), F(0), F(5)]
    back = trop_chart_change(mutate(s, 1), s)
    assert back(m(x)) == x


def test_delta_interior():
    cone = ConeH.make([((1, 0), 0), ((0, 1), 0)], (), 2)
    assert cone.delta_interior_contains((2, 3), 1)
    assert not cone.delta_interior_contains((1, 1), 1)  # strict
    assert not cone.delta_interior_contains((1, 0), 0)
