"""Property tests for the structural invariants of each module."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crystalcone import linalg
from crystalcone.cartan import (
    bilinear_weights,
    build_cartan,
    comparison_psi,
    dual_datum,
    longest_word,
    positive_roots,
    reflect,
    weyl_act,
)
from crystalcone.cluster import mutate, seed_from_word
from crystalcone.gromov import scale_certificate, search_embedding, verify_certificate
from crystalcone.langlands import comparison_trop
from crystalcone.laurent import LaurentPoly
from crystalcone.polytopes import count_dim, string_polytope, weight_counts
from crystalcone.reps import freudenthal
from crystalcone.symgroup import (
    bk_potential_in_chart,
    build_chart,
    factorization_point,
    gauss_decompose,
    mat_eq,
    mat_mul,
    rep_carrier,
)
from crystalcone.tropical import bk_cone, hw_trop, torsion_free_cokernel, tropicalize, wt_trop

ALL = [build_cartan(f, n) for f, n in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("G", 2)]]
COUNTABLE = [build_cartan(f, n) for f, n in [("A", 1), ("A", 2), ("B", 2), ("C", 2)]]
CARRIED = [build_cartan(f, n) for f, n in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2)]]

data = st.sampled_from(ALL)
small = st.integers(-4, 4)


def weights(datum):
    return st.tuples(*[small] * datum.rank)


def words(datum, max_len=6):
    return st.lists(st.integers(1, datum.rank), max_size=max_len)


# ---------------------------------------------------------------------------
# roots and weights


@given(st.data())
def test_reflection_is_involution(draw):
    d = draw.draw(data)
    g = draw.draw(weights(d))
    i = draw.draw(st.integers(1, d.rank))
    assert reflect(d, i, reflect(d, i, g)) == tuple(g)


@settings(max_examples=200)
@given(st.data())
def test_form_is_weyl_invariant(draw):
    d = draw.draw(data)
    g, h = draw.draw(weights(d)), draw.draw(weights(d))
    w = draw.draw(words(d))
    assert bilinear_weights(d, weyl_act(d, w, g), weyl_act(d, w, h)) == bilinear_weights(d, g, h)


@pytest.mark.parametrize("d", ALL, ids=lambda d: d.name)
def test_symmetrized_and_root_count(d):
    ad = [[d.cartan[i][j] * d.symmetrizer[j] for j in range(d.rank)] for i in range(d.rank)]
    assert ad == linalg.transpose(ad)
    assert len(positive_roots(d)) == len(longest_word(d))


@given(st.data())
def test_psi_is_integral(draw):
    d = draw.draw(data)
    x = draw.draw(weights(d))
    assert all(Fraction(v).denominator == 1 for v in comparison_psi(d, x))


# ---------------------------------------------------------------------------
# tropicalization


def positive_polys(nvars):
    mono = st.tuples(st.tuples(*[st.integers(-3, 3)] * nvars), st.integers(1, 5))
    return st.lists(mono, min_size=1, max_size=4).map(
        lambda ts: sum((LaurentPoly.monomial(nvars, e, c) for e, c in ts), LaurentPoly.zero(nvars))
    )


points = st.tuples(st.fractions(-10, 10, max_denominator=6), st.fractions(-10, 10, max_denominator=6))


@settings(max_examples=100)
@given(positive_polys(2), points, st.integers(0, 7))
def test_tropical_homogeneity(f, p, k):
    t = tropicalize(f)
    assert t(tuple(k * x for x in p)) == k * t(p)


@settings(max_examples=100)
@given(positive_polys(2), positive_polys(2), points)
def test_tropical_product(f, g, p):
    assert tropicalize(f * g)(p) == tropicalize(f)(p) + tropicalize(g)(p)


@pytest.mark.parametrize("d", CARRIED, ids=lambda d: d.name)
def test_cone_rows_match_potential_terms(d):
    phi = bk_potential_in_chart(build_chart(d, None, "cluster"))
    assert len(bk_cone(d, None, "cluster").halfspaces) == len(phi.terms)


@pytest.mark.parametrize("d", CARRIED, ids=lambda d: d.name)
@pytest.mark.parametrize("kind", ["cluster", "reduced"])
def test_hw_wt_torsion_free(d, kind):
    assert torsion_free_cokernel(hw_trop(d, None, kind))
    assert torsion_free_cokernel(wt_trop(d, None, kind))


# ---------------------------------------------------------------------------
# groups


@pytest.mark.parametrize("d", CARRIED, ids=lambda d: d.name)
def test_gauss_reassembles_factorization_point(d):
    m = factorization_point(rep_carrier(d), longest_word(d))
    low, diag, up = gauss_decompose(m)
    n = len(m)
    dmat = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert mat_eq(mat_mul(mat_mul(low, dmat), up), m)


# ---------------------------------------------------------------------------
# seeds


@settings(max_examples=60)
@given(st.sampled_from([("A", 2, (1, 2, 1)), ("A", 3, (1, 2, 1, 3, 2, 1)), ("C", 2, (1, 2, 1, 2))]), st.data())
def test_frozen_labels_survive_mutation(case, draw):
    f, n, word = case
    s0 = seed_from_word(build_cartan(f, n), word)
    mutable = sorted(s0.mutable)
    steps = draw.draw(st.lists(st.sampled_from(mutable), max_size=6))
    s = s0
    for k in steps:
        s = mutate(s, k)
    for k in s0.index:
        if k not in s0.mutable:
            assert s.degrees[s.pos(k)] == s0.degrees[s0.pos(k)]


# ---------------------------------------------------------------------------
# counting


lam_small = st.tuples(st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=25)
@given(st.sampled_from([d for d in COUNTABLE if d.rank == 2]), lam_small)
def test_counts_are_weyl_symmetric(d, lam):
    wc = weight_counts(d, None, lam)
    assert sum(wc.values()) == count_dim(d, None, lam)
    assert wc.get(tuple(lam)) == 1
    for nu, c in wc.items():
        for i in range(1, d.rank + 1):
            assert wc.get(reflect(d, i, nu), 0) == c


@settings(max_examples=25)
@given(st.sampled_from([d for d in COUNTABLE if d.rank == 2]), lam_small)
def test_reduced_words_agree(d, lam):
    dual = dual_datum(d)
    words_ = [longest_word(dual), tuple(reversed(longest_word(dual)))]
    assert weight_counts(d, words_[0], lam) == weight_counts(d, words_[1], lam)


@settings(max_examples=25)
@given(st.sampled_from(COUNTABLE[1:]), lam_small)
def test_freudenthal_orbits(d, lam):
    mults = freudenthal(d, lam).mults
    for nu, c in mults.items():
        for i in range(1, d.rank + 1):
            assert mults[reflect(d, i, nu)] == c


# ---------------------------------------------------------------------------
# comparison and width


@pytest.mark.parametrize("d", CARRIED, ids=lambda d: d.name)
def test_comparison_integral_iff_simply_laced(d):
    cm = comparison_trop(d, None)
    prod = 1
    for x in cm.diag:
        prod *= x
    assert cm.det == prod * linalg.det([list(r) for r in cm.h_block])
    assert cm.unimodular() == all(x == 1 for x in d.symmetrizer)


@pytest.mark.parametrize("k", [2, 3])
def test_certificates_scale(k):
    a2 = build_cartan("A", 2)
    p1 = string_polytope(a2, (1, 2, 1), (2, 1))
    pk = string_polytope(a2, (1, 2, 1), (2 * k, k))
    cert = search_embedding(p1, 1, 1)
    big = scale_certificate(cert, p1, pk, k)
    assert big.ell == k * cert.ell and verify_certificate(big, pk)
