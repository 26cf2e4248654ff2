from fractions import Fraction

import pytest

import oracles
from crystalcone.cartan import (
    bilinear_weights,
    build_cartan,
    check_reduced,
    comparison_psi,
    dual_datum,
    is_reduced,
    longest_word,
    parse_type,
    positive_roots,
    psi_matrix,
    simple_root,
    weyl_act,
)
from crystalcone.errors import NotReduced, UnsupportedType

FROZEN = oracles.load()


def test_build_a2():
    d = build_cartan("A", 2)
    assert d.cartan == ((2, -1), (-1, 2))
    assert d.symmetrizer == (1, 1)


def test_build_a1():
    d = build_cartan("A", 1)
    assert d.cartan == ((2,),)
    assert d.symmetrizer == (1,)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "C2", "B2", "G2"])
def test_symmetrized(name):
    d = parse_type(name)
    a, dd = d.cartan, d.symmetrizer
    r = d.rank
    assert all(a[i][i] == 2 for i in range(r))
    assert all(a[i][j] <= 0 for i in range(r) for j in range(r) if i != j)
    assert all(a[i][j] * dd[j] == a[j][i] * dd[i] for i in range(r) for j in range(r))


def test_c2_b2_are_dual():
    c2, b2 = build_cartan("C", 2), build_cartan("B", 2)
    assert dual_datum(c2).cartan == b2.cartan
    assert dual_datum(dual_datum(c2)) == c2


def test_weyl_act_examples():
    a1 = build_cartan("A", 1)
    assert tuple(weyl_act(a1, (1,), (1,))) == (-1,)
    a2 = build_cartan("A", 2)
    assert tuple(weyl_act(a2, (2,), (0, 1))) == (1, -1)
    assert tuple(weyl_act(a2, (), (3, 4))) == (3, 4)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "C2", "B2"])
def test_longest_word_length_matches_brute_force(name):
    d = parse_type(name)
    w = longest_word(d)
    assert len(w) == FROZEN["weyl"][name]["longest"]
    assert is_reduced(d, w)


def test_not_reduced():
    with pytest.raises(NotReduced):
        check_reduced(build_cartan("A", 2), (1, 1))


def test_bad_type():
    with pytest.raises(UnsupportedType):
        parse_type("X3")


def test_bilinear_examples():
    assert bilinear_weights(build_cartan("A", 1), (1,), (1,)) == Fraction(1, 2)
    a2 = build_cartan("A", 2)
    assert bilinear_weights(a2, (1, 0), (0, 1)) == Fraction(1, 3)


def test_fundamental_against_simple_roots():
    # (omega_i, alpha_j) = delta_ij / d_j
    for name in ["A2", "C2", "B2", "A3"]:
        d = parse_type(name)
        for i in range(d.rank):
            for j in range(d.rank):
                w = tuple(int(k == i) for k in range(d.rank))
                val = bilinear_weights(d, w, simple_root(d, j + 1))
                assert val == (Fraction(1, d.symmetrizer[j]) if i == j else 0)


def test_comparison_psi():
    a1 = build_cartan("A", 1)
    assert tuple(comparison_psi(a1, (1,))) == tuple(simple_root(a1, 1))
    c2 = build_cartan("C", 2)
    assert tuple(comparison_psi(c2, (0, 0))) == (0, 0)
    for i in (1, 2):
        e = tuple(int(k == i - 1) for k in range(2))
        expect = tuple(c2.symmetrizer[i - 1] * x for x in simple_root(c2, i))
        assert tuple(comparison_psi(c2, e)) == expect
    assert psi_matrix(c2) is not None


@pytest.mark.parametrize("name,count", [("A1", 1), ("A2", 3), ("C2", 4), ("A3", 6), ("G2", 6)])
def test_positive_roots(name, count):
    assert len(positive_roots(parse_type(name))) == count
