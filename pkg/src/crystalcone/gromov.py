"""Integral affine width certificates for string polytopes.

A certificate is a unimodular integer matrix ``A``, a translation ``b`` and a
size ``ell`` such that the closed simplex ``b + A (ell * conv(0, e_1..e_m))``
lies in the polytope.  Sizes are measured in units where the open simplex
``sum x < 1`` has width one, so the usual ``2 pi`` factor is left out.

The best size for a fixed ``A`` is an exact LP in ``(ell, b)``.  Candidates
are tried in order: signed permutations, products of elementary shears, then
all matrices with bounded entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .cartan import CartanDatum, is_dominant, positive_roots
from .errors import NotDominant
from .lp import solve_lp
from .polytopes import Polytope

__all__ = [
    "WidthCertificate",
    "lambda_bound",
    "simplex_vertices",
    "candidate_matrices",
    "best_translation",
    "search_embedding",
    "best_width",
    "width_upper_bound",
    "certificate_violation",
    "verify_certificate",
    "scale_certificate",
]

FOUND = "found"
NOT_FOUND = "not_found"


@dataclass(frozen=True)
class WidthCertificate:
    """``A``, ``b`` and ``ell`` with the search outcome.

    ``status`` is ``"found"`` when ``ell`` reaches the requested target and
    ``"not_found"`` otherwise; in the latter case the fields hold the best
    embedding seen (or ``ell = 0`` with empty ``A`` if none was feasible).
    """

    A: tuple
    b: tuple
    ell: Fraction
    status: str = FOUND
    target: str = ""
    tried: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


def lambda_bound(datum: CartanDatum, lam: Sequence[int]) -> Fraction:
    """``min <lambda, alpha^vee>`` over positive coroots (no ``2 pi`` factor)."""
    if len(lam) != datum.rank:
        raise NotDominant(f"expected {datum.rank} coordinates, got {len(lam)}")
    if not is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not dominant")
    return Fraction(min(sum(l * c for l, c in zip(lam, cor)) for _, cor in positive_roots(datum)))


def simplex_vertices(m: int, ell) -> list:
    """``0, ell e_1, ..., ell e_m``."""
    ell = Fraction(ell)
    out = [tuple(Fraction(0) for _ in range(m))]
    for k in range(m):
        out.append(tuple(ell if j == k else Fraction(0) for j in range(m)))
    return out


def _signed_permutations(m: int, bound: int) -> Iterator[tuple]:
    if bound < 1:
        return
    # column order does not change the simplex, so sign patterns suffice
    for signs in itertools.product((1, -1), repeat=m):
        yield tuple(tuple(signs[j] if i == j else 0 for j in range(m)) for i in range(m))


def _shears(m: int, bound: int, depth: int = 2) -> Iterator[tuple]:
    if bound < 1 or m < 2:
        return
    elems = []
    for i in range(m):
        for j in range(m):
            if i != j:
                for c in range(-bound, bound + 1):
                    if c:
                        e = [[int(a == b) for b in range(m)] for a in range(m)]
                        e[i][j] = c
                        elems.append(e)
    for k in range(1, depth + 1):
        for combo in itertools.product(elems, repeat=k):
            prod = linalg.identity(m)
            for e in combo:
                prod = linalg.matmul(prod, e)
            for signs in itertools.product((1, -1), repeat=m):
                a = tuple(tuple(int(prod[i][j]) * signs[j] for j in range(m)) for i in range(m))
                if max(abs(x) for row in a for x in row) <= bound:
                    yield a


def _brute(m: int, bound: int) -> Iterator[tuple]:
    if bound < 1:
        return
    vals = range(-bound, bound + 1)
    for flat in itertools.product(vals, repeat=m * m):
        a = tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(m))
        if abs(linalg.det([list(r) for r in a])) == 1:
            yield a


def _canonical(a: tuple) -> tuple:
    m = len(a)
    return tuple(sorted(tuple(a[i][j] for i in range(m)) for j in range(m)))


def candidate_matrices(
    m: int, bound: int, max_candidates: int = 200_000, brute: bool = True, shear_depth: int = 2
) -> Iterator[tuple]:
    """Unimodular matrices with entries in ``[-bound, bound]``, deduplicated.

    Two matrices with the same set of columns give the same simplex, so only
    one of them is produced.
    """
    seen = set()
    count = 0
    gens = [_signed_permutations(m, bound), _shears(m, bound, shear_depth)]
    if brute:
        gens.append(_brute(m, bound))
    for gen in gens:
        for a in gen:
            key = _canonical(a)
            if key in seen:
                continue
            seen.add(key)
            yield a
            count += 1
            if count >= max_candidates:
                return


def best_translation(poly: Polytope, a: Sequence[Sequence[int]]) -> tuple | None:
    """Exact maximum of ``ell`` over translations ``b`` for fixed ``A``.

    Returns ``(ell, b)`` or ``None`` when even ``ell = 0`` is infeasible.
    """
    m = poly.dim
    a_ub, b_ub = [], []
    for row in poly.rows:
        n, c = row[:-1], row[-1]
        a_ub.append([0] + [-x for x in n])  # n.b + c >= 0
        b_ub.append(c)
        for k in range(m):
            col = sum(n[i] * a[i][k] for i in range(m))
            a_ub.append([-col] + [-x for x in n])
            b_ub.append(c)
    a_ub.append([-1] + [0] * m)  # ell >= 0
    b_ub.append(0)
    res = solve_lp([1] + [0] * m, a_ub, b_ub, maximize=True)
    if res.status != "optimal":
        return None
    return Fraction(res.value), tuple(Fraction(v) for v in res.x[1:])


def search_embedding(
    poly: Polytope, ell_target, entry_bound: int, max_candidates: int = 200_000, target: str = ""
) -> WidthCertificate:
    """First certificate with ``ell >= ell_target`` (sound, not complete)."""
    ell_target = Fraction(ell_target)
    m = poly.dim
    best = None
    tried = 0
    for a in candidate_matrices(m, entry_bound, max_candidates):
        tried += 1
        sol = best_translation(poly, a)
        if sol is None:
            continue
        ell, b = sol
        if best is None or ell > best[0]:
            best = (ell, b, a)
        if ell >= ell_target:
            return WidthCertificate(a, b, ell, FOUND, target, tried)
    if best is None:
        return WidthCertificate((), (), Fraction(0), NOT_FOUND, target, tried)
    ell, b, a = best
    return WidthCertificate(a, b, ell, NOT_FOUND, target, tried)


def best_width(
    poly: Polytope, entry_bound: int, max_candidates: int = 20_000, brute: bool = False, shear_depth: int = 1
) -> WidthCertificate:
    """Largest LP size over the searched candidate matrices.

    Without ``brute`` only signed permutations and shear products are scanned.
    """
    best = None
    tried = 0
    gens = candidate_matrices(poly.dim, entry_bound, max_candidates, brute=brute, shear_depth=shear_depth)
    for a in gens:
        tried += 1
        sol = best_translation(poly, a)
        if sol is not None and (best is None or sol[0] > best[0]):
            best = (sol[0], sol[1], a)
    if best is None:
        return WidthCertificate((), (), Fraction(0), NOT_FOUND, "", tried)
    return WidthCertificate(best[2], best[1], best[0], FOUND, "", tried)


def width_upper_bound(poly: Polytope, directions: Sequence[Sequence[int]] | None = None) -> tuple:
    """``min_u (max u.t - min u.t)`` over integer directions ``u``.

    Unimodular maps preserve lattice widths and ``ell`` times the standard
    simplex has width ``ell`` or more in every nonzero integer direction, so
    this bounds the size of every certificate.  Defaults to the coordinate
    directions and the row normals.

    Returns
    -------
    (Fraction, tuple)
        The bound and the direction attaining it.
    """
    m = poly.dim
    if directions is None:
        directions = [tuple(int(i == j) for j in range(m)) for i in range(m)]
        directions += [tuple(r[:-1]) for r in poly.rows]
    a_ub = [[-x for x in r[:-1]] for r in poly.rows]
    b_ub = [r[-1] for r in poly.rows]
    best = None
    for u in directions:
        if not any(u):
            continue
        lo = solve_lp(list(u), a_ub, b_ub)
        hi = solve_lp(list(u), a_ub, b_ub, maximize=True)
        if lo.status != "optimal" or hi.status != "optimal":
            continue
        w = Fraction(hi.value) - Fraction(lo.value)
        if best is None or w < best[0]:
            best = (w, tuple(u))
    if best is None:
        raise ValueError("polytope is empty or unbounded")
    return best


def _vertices(cert: WidthCertificate, m: int) -> list:
    out = []
    for v in simplex_vertices(m, cert.ell):
        out.append(tuple(cert.b[i] + sum(cert.A[i][j] * v[j] for j in range(m)) for i in range(m)))
    return out


def certificate_violation(cert: WidthCertificate, poly: Polytope, margin=0) -> tuple | None:
    """First ``(vertex, row)`` with ``n.v + c < margin``; ``None`` if the certificate holds."""
    m = poly.dim
    if not cert.A or len(cert.A) != m or abs(linalg.det([list(r) for r in cert.A])) != 1:
        return ((), ())
    margin = Fraction(margin)
    for v in _vertices(cert, m):
        for row in poly.rows:
            if sum(Fraction(row[i]) * v[i] for i in range(m)) + row[-1] < margin:
                return v, row
    return None


def verify_certificate(cert: WidthCertificate, poly: Polytope, margin=0) -> bool:
    """Exact check of all simplex vertices against all rows (closed, or with a strict margin)."""
    return cert.ell > 0 and certificate_violation(cert, poly, margin) is None


def scale_certificate(cert: WidthCertificate, poly: Polytope, poly_k: Polytope, k: int) -> WidthCertificate:
    """Transport a certificate for ``poly`` to ``poly_k = k * poly`` with size ``k ell``.

    Both polytopes must share the fiber lattice basis; only the base point differs.
    """
    ker = [[Fraction(x) for x in row] for row in poly.kernel]
    v = [k * Fraction(a) - Fraction(b) for a, b in zip(poly.x0, poly_k.x0)]
    kt = linalg.transpose(ker)
    shift = linalg.solve(linalg.matmul(kt, ker), linalg.matvec(kt, v))
    if linalg.matvec(ker, shift) != v:
        raise ValueError("polytopes do not share a fiber lattice")
    b = tuple(k * x + s for x, s in zip(cert.b, shift))
    return WidthCertificate(cert.A, b, k * cert.ell, cert.status, cert.target, cert.tried)
