from fractions import Fraction

import pytest

from crystalcone import kernels
from crystalcone.cartan import build_cartan, dual_datum
from crystalcone.errors import ChartUnsupported, UnsupportedType
from crystalcone.polytopes import (
    count_dim,
    count_weight,
    enumerate_lattice_points,
    hw_fiber,
    polytope_volume,
    string_polytope,
    weight_counts,
)
from crystalcone.reps import freudenthal, weyl_dim
from crystalcone.symgroup import build_chart, mutated_chart
from crystalcone.tropical import bk_cone, hw_trop, wt_trop
from oracles import box_points, load

ORACLE = load()


@pytest.mark.parametrize("n", range(0, 8))
def test_a1_counts(n):
    assert count_dim(build_cartan("A", 1), None, (n,)) == n + 1


def test_a2_rho():
    d = build_cartan("A", 2)
    wc = weight_counts(d, (1, 2, 1), (1, 1))
    assert sum(wc.values()) == 8
    assert wc[(0, 0)] == 2


def test_c2_first_fundamental():
    assert count_dim(build_cartan("C", 2), None, (1, 0)) == 4
    assert count_dim(build_cartan("C", 2), None, (0, 1)) == 5


@pytest.mark.parametrize("key", sorted(k for k in ORACLE["gt"] if k.startswith("A2:")))
def test_a2_matches_gelfand_tsetlin(key):
    lam = tuple(int(x) for x in key[3:].split(","))
    got = weight_counts(build_cartan("A", 2), (1, 2, 1), lam)
    assert sorted([list(w), m] for w, m in got.items()) == ORACLE["gt"][key]


@pytest.mark.parametrize("typ,lam", [("B", (1, 1)), ("C", (2, 1)), ("A", (2, 0, 1)), ("A", (1, 0, 1))])
def test_matches_freudenthal(typ, lam):
    d = build_cartan(typ, len(lam))
    assert weight_counts(d, None, lam) == freudenthal(d, lam).mults
    assert count_dim(d, None, lam) == weyl_dim(d, lam)


def test_count_weight_absent():
    assert count_weight(build_cartan("A", 2), None, (1, 1), (5, 5)) == 0


def test_box_enumeration_agrees():
    poly = string_polytope(build_cartan("A", 2), (1, 2, 1), (2, 1))
    box = box_points([tuple(r) for r in poly.rows], 6)
    assert len(box) == len(enumerate_lattice_points(poly))


def test_pure_backend_agrees():
    poly = string_polytope(build_cartan("B", 2), None, (2, 1))
    fast = enumerate_lattice_points(poly)
    pure = enumerate_lattice_points(poly, backend=kernels.load_backend(pure=True))
    assert fast.points == pure.points


def test_volume_scaling():
    d = build_cartan("A", 2)
    v1 = polytope_volume(string_polytope(d, (1, 2, 1), (1, 1)))
    v2 = polytope_volume(string_polytope(d, (1, 2, 1), (2, 2)))
    assert v1 > 0 and v2 == 8 * v1


def test_a1_volume():
    assert polytope_volume(string_polytope(build_cartan("A", 1), None, (5,))) == Fraction(5)


def _mutated_counts(datum, word, steps, lam):
    x = dual_datum(datum)
    mc = mutated_chart(build_chart(x, word, "reduced"), steps)
    cone = bk_cone(x, chart=mc, torus_basis="coweight")
    hw = hw_trop(x, chart=mc, torus_basis="coweight")
    wt = wt_trop(x, chart=mc, torus_basis="coweight")
    return enumerate_lattice_points(hw_fiber(cone, hw, lam, wt)).counts_by_weight


@pytest.mark.parametrize(
    "typ,rank,word,steps,lam",
    [
        ("A", 2, (1, 2, 1), (1,), (1, 1)),
        ("A", 2, (2, 1, 2), (1,), (2, 0)),
        ("C", 2, (1, 2, 1, 2), (1, 2), (1, 1)),
        ("A", 3, (1, 2, 1, 3, 2, 1), (1, 2, 3), (1, 0, 1)),
    ],
)
def test_mutation_count_invariance(typ, rank, word, steps, lam):
    d = build_cartan(typ, rank)
    assert _mutated_counts(d, word, steps, lam) == weight_counts(d, word, lam)


def test_mutating_frozen_index_rejected():
    x = build_cartan("A", 2)
    with pytest.raises(ChartUnsupported):
        mutated_chart(build_chart(x, (1, 2, 1), "reduced"), (3,))


def test_g2_has_no_carrier():
    with pytest.raises(UnsupportedType):
        count_dim(build_cartan("G", 2), None, (1, 0))
