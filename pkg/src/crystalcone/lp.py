"""Exact rational linear programming with infeasibility certificates.

A dense two-phase simplex method over :class:`fractions.Fraction` with
Bland's anti-cycling rule.  Problems here have at most a few dozen rows, so a
tableau implementation is adequate and keeps every answer exact.

Variables are free (unrestricted in sign) unless stated otherwise; the
constraint convention is ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "solve_lp", "farkas_certificate", "verify_farkas", "is_feasible", "interior_point"]


@dataclass
class LPResult:
    """Outcome of :func:`solve_lp`.

    Attributes
    ----------
    status : str
        ``"optimal"``, ``"infeasible"`` or ``"unbounded"``.
    x : list of Fraction or None
        An optimal point.
    value : Fraction or None
        Objective value at ``x``.
    """

    status: str
    x: list | None = None
    value: Fraction | None = None


def _F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _simplex_standard(c, a, b):
    """Minimize ``c x`` subject to ``a x = b``, ``x >= 0`` with ``b >= 0``.

    Returns ``(status, x)``.
    """
    m = len(a)
    n = len(c)
    # tableau columns: n original, m artificial, rhs
    tab = [list(row) + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i, row in enumerate(a)]
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r, col):
        pv = tab[r][col]
        if pv != 1:
            tab[r] = [x / pv for x in tab[r]]
        prow = tab[r]
        for i in range(m):
            if i != r:
                f = tab[i][col]
                if f:
                    row = tab[i]
                    tab[i] = [x - f * y for x, y in zip(row, prow)]
        basis[r] = col

    def run(cost, allowed):
        while True:
            # reduced costs
            best = None
            for j in range(width):
                if j not in allowed or j in basis:
                    continue
                rc = cost[j] - sum(cost[basis[i]] * tab[i][j] for i in range(m) if tab[i][j])
                if rc < 0:
                    best = j
                    break
            if best is None:
                return "optimal"
            ratios = [
                (tab[i][-1] / tab[i][best], basis[i], i) for i in range(m) if tab[i][best] > 0
            ]
            if not ratios:
                return "unbounded"
            _, _, r = min(ratios)
            pivot(r, best)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    run(phase1, set(range(width)))
    infeas = sum(tab[i][-1] for i in range(m) if basis[i] >= n)
    if infeas > 0:
        return "infeasible", None
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    cost = list(c) + [Fraction(0)] * m
    keep = set(range(n))
    status = run(cost, keep)
    if status == "unbounded":
        return "unbounded", None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    return "optimal", x


def solve_lp(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    maximize: bool = False,
    nonneg: bool = False,
) -> LPResult:
    """Solve ``min (or max) c x`` subject to ``a_ub x <= b_ub``, ``a_eq x = b_eq``."""
    n = len(c)
    c = [_F(x) for x in c]
    if maximize:
        c = [-x for x in c]
    nfree = 0 if nonneg else n
    rows = []
    rhs = []
    nslack = len(a_ub)
    for k, (row, bi) in enumerate(zip(a_ub, b_ub)):
        row = [_F(x) for x in row]
        full = row + ([-x for x in row] if not nonneg else []) + [Fraction(int(j == k)) for j in range(nslack)]
        rows.append(full)
        rhs.append(_F(bi))
    for row, bi in zip(a_eq, b_eq):
        row = [_F(x) for x in row]
        full = row + ([-x for x in row] if not nonneg else []) + [Fraction(0)] * nslack
        rows.append(full)
        rhs.append(_F(bi))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    cost = c + ([-x for x in c] if not nonneg else []) + [Fraction(0)] * nslack
    if not rows:
        if any(cost):
            return LPResult("unbounded")
        return LPResult("optimal", [Fraction(0)] * n, Fraction(0))
    status, x = _simplex_standard(cost, rows, rhs)
    if status != "optimal":
        return LPResult(status)
    sol = [x[j] - (x[n + j] if not nonneg else 0) for j in range(n)] if nfree else x[:n]
    val = sum(ci * xi for ci, xi in zip(c, sol))
    return LPResult("optimal", sol, -val if maximize else val)


def is_feasible(a_ub=(), b_ub=(), a_eq=(), b_eq=(), n: int | None = None) -> bool:
    if n is None:
        n = len(a_ub[0]) if a_ub else len(a_eq[0])
    return solve_lp([0] * n, a_ub, b_ub, a_eq, b_eq).status == "optimal"


def farkas_certificate(a_ub=(), b_ub=(), a_eq=(), b_eq=()):
    """Certificate ``(y, z)`` proving ``{a_ub x <= b_ub, a_eq x = b_eq}`` empty.

    ``y >= 0``, ``y a_ub + z a_eq = 0`` and ``y b_ub + z b_eq = -1``.  Returns
    ``None`` when the system is feasible.
    """
    p, q = len(a_ub), len(a_eq)
    n = len(a_ub[0]) if p else len(a_eq[0])
    # unknowns: y (p, >= 0), z (q, free) -> split z = z1 - z2
    cols = p + 2 * q
    eq_rows = []
    eq_rhs = []
    for j in range(n):
        row = [_F(a_ub[i][j]) for i in range(p)]
        row += [_F(a_eq[i][j]) for i in range(q)] + [-_F(a_eq[i][j]) for i in range(q)]
        eq_rows.append(row)
        eq_rhs.append(Fraction(0))
    row = [_F(b) for b in b_ub] + [_F(b) for b in b_eq] + [-_F(b) for b in b_eq]
    eq_rows.append(row)
    eq_rhs.append(Fraction(-1))
    res = solve_lp([0] * cols, a_eq=eq_rows, b_eq=eq_rhs, nonneg=True)
    if res.status != "optimal":
        return None
    y = res.x[:p]
    z = [res.x[p + i] - res.x[p + q + i] for i in range(q)]
    return y, z


def verify_farkas(cert, a_ub=(), b_ub=(), a_eq=(), b_eq=()) -> bool:
    """Exact check of a certificate from :func:`farkas_certificate`."""
    y, z = cert
    if any(v < 0 for v in y):
        return False
    n = len(a_ub[0]) if a_ub else len(a_eq[0])
    for j in range(n):
        s = sum(y[i] * a_ub[i][j] for i in range(len(y))) + sum(z[i] * a_eq[i][j] for i in range(len(z)))
        if s != 0:
            return False
    total = sum(y[i] * b_ub[i] for i in range(len(y))) + sum(z[i] * b_eq[i] for i in range(len(z)))
    return total < 0


def interior_point(a_ub, b_ub, a_eq=(), b_eq=()):
    """Point maximizing the minimum slack (capped at 1); ``(point, slack)``.

    A positive slack certifies a nonempty relative interior of the
    inequality part.
    """
    n = len(a_ub[0]) if a_ub else len(a_eq[0])
    rows = [list(r) + [1] for r in a_ub]
    eq = [list(r) + [0] for r in a_eq]
    cap = [[0] * n + [1]]
    res = solve_lp(
        [0] * n + [1], rows + cap, list(b_ub) + [1], eq, b_eq, maximize=True
    )
    if res.status != "optimal":
        return None, None
    return res.x[:n], res.x[n]
