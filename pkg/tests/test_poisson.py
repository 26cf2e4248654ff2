from fractions import Fraction

import pytest

from crystalcone.cartan import build_cartan
from crystalcone.cluster import mutate, seed_from_word
from crystalcone.errors import ChartUnsupported
from crystalcone.poisson import (
    c_coefficients,
    canonical_form,
    casimir_check,
    darboux_coordinates,
    pt_bracket_matrix,
    special_chart_brackets,
    triangular_normalization,
)

CASES = [
    ("A", 1, (1,)),
    ("A", 2, (1, 2, 1)),
    ("A", 2, (2, 1, 2)),
    ("C", 2, (1, 2, 1, 2)),
    ("B", 2, (2, 1, 2, 1)),
    ("A", 3, (1, 2, 1, 3, 2, 1)),
    ("A", 3, (2, 1, 3, 2, 1, 3)),
]


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_degree_formula_matches_closed_form(typ, rank, word):
    d = build_cartan(typ, rank)
    assert pt_bracket_matrix(seed_from_word(d, word)) == special_chart_brackets(d, word)


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_log_canonical_antisymmetry(typ, rank, word):
    czz, czb = c_coefficients(seed_from_word(build_cartan(typ, rank), word))
    n = len(czz)
    for a in range(n):
        for b in range(n):
            assert czz[a][b] == -czz[b][a]
            # {z_a, zbar_b} = conj {zbar_a, z_b}, hence Im c_{z_a,zbar_b} = Im c_{z_b,zbar_a}
            assert czb[a][b] == czb[b][a]


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_triangular_normalization(typ, rank, word):
    d = build_cartan(typ, rank)
    norm = triangular_normalization(d, word)
    m = len(word)
    for j in range(m):
        assert norm.Y[j][j] == 1
        for k in range(j):
            assert norm.Y[j][k] == 0


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_darboux_reaches_canonical_form(typ, rank, word):
    d = build_cartan(typ, rank)
    out = darboux_coordinates(seed_from_word(d, word))
    assert out["full"] == [[Fraction(v) for v in row] for row in canonical_form(rank, len(word))]


@pytest.mark.parametrize("typ,rank,word", CASES)
def test_casimirs(typ, rank, word):
    assert casimir_check(seed_from_word(build_cartan(typ, rank), word))


def test_a1_values():
    p = pt_bracket_matrix(seed_from_word(build_cartan("A", 1), (1,)))
    assert p[-1, 1] == 1 and p[1, 1] == 0


def test_mutated_seed_rejected():
    s = mutate(seed_from_word(build_cartan("A", 2), (1, 2, 1)), 1)
    with pytest.raises(ChartUnsupported):
        pt_bracket_matrix(s)
