"""Numeric check that the scaled brackets on ``K^*`` converge to the constant structure.

Points of ``K^* = A N_-`` are produced from a cluster chart by the
detropicalization ``z_k = exp(s x_k / 2 + i phi_k)`` (frozen variables with
negative index are real).  Brackets of the chart functions are evaluated with
the real r-matrix of ``sl_n`` under the trace form:

``{f, g}(b) = sum_t df(P_t b) dg(Q_t b) - df(b P_t) dg(b Q_t)``

where ``r = sum_t P_t (x) Q_t``.  Chart functions are generalized minors
``det(U b V)``, whose differentials ``tr(adj(U b V) U W V)`` are exact, so no
finite differences are involved.  Only type ``A`` carriers are supported.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .cartan import CartanDatum, longest_word
from .cluster import seed_from_word
from .errors import ChartUnsupported, Inconclusive, ScaleError
from .poisson import pt_bracket_matrix
from .symgroup import _as_rf, _sbar_inverse, bk_potential_in_chart, build_chart, evaluate_matrix, seed_minor_data
from .tropical import bk_cone, tropicalize

__all__ = [
    "PTPoint",
    "ConvergenceReport",
    "NOISE_FLOOR",
    "r_matrix_terms",
    "detrop",
    "chart_values",
    "numeric_bracket",
    "pi_s_in_coordinates",
    "pi_limit",
    "random_pt_point",
    "convergence_fit",
]

NOISE_FLOOR = 1e-13
# a bracket already this small at the start of the grid is zero up to roundoff
SIGNAL_FLOOR = 1e-10


@dataclass(frozen=True)
class PTPoint:
    """A point ``(x, phi)`` of the partial tropicalization with margin ``delta``."""

    x: tuple
    phi: tuple
    delta: float


@dataclass
class ConvergenceReport:
    """Deviation samples ``|pi_s - pi_limit|`` per bracket over an ``s`` grid.

    ``slopes`` maps a bracket label to the least-squares slope of
    ``log(deviation)`` against ``s``; only samples before the first one at
    or below :data:`NOISE_FLOOR` enter the fit.  The overall ``slope`` is the smallest one.  Brackets whose
    deviation starts below :data:`SIGNAL_FLOOR` are exact zeros carried by
    roundoff; they are listed in ``zero_brackets`` and not fitted.
    """

    s_grid: list
    samples: dict
    slopes: dict
    slope: float
    delta: float
    passed: bool
    max_deviation: list = field(default_factory=list)
    zero_brackets: list = field(default_factory=list)


class _Context:
    """Symbolic data of a cluster chart, prepared once per (datum, word)."""

    def __init__(self, datum: CartanDatum, word: tuple):
        if datum.family != "A":
            raise ChartUnsupported("numeric brackets are implemented for type A only")
        self.datum = datum
        self.word = word
        self.chart = build_chart(datum, word, "cluster")
        self.n = self.chart.carrier.dim
        self.index = list(self.chart.indices)
        # minor k is det(rows[k] of (u^-1 b) restricted to the first size columns)
        self.minors = []
        sizes = self.chart.carrier.minor_sizes
        for k, u, i in seed_minor_data(datum, word):
            uinv = _sbar_inverse(self.chart.carrier, tuple(u))
            self.minors.append((tuple(uinv[:sizes[i - 1]]), sizes[i - 1]))


_CONTEXTS: dict = {}


def _context(datum: CartanDatum, word: Sequence[int] | None) -> _Context:
    word = tuple(longest_word(datum) if word is None else word)
    key = (datum, word)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = _Context(datum, word)
    return _CONTEXTS[key]


class _Float:
    """Hardware complex arithmetic."""

    i = 1j
    half = 0.5
    sqrt = staticmethod(math.sqrt)
    exp = staticmethod(cmath.exp)
    conj = staticmethod(lambda z: z.conjugate())

    @staticmethod
    def det_adj(m: list) -> tuple:
        a = np.array(m, dtype=complex)
        det = complex(np.linalg.det(a))
        if det == 0:
            raise ScaleError("chart function vanishes (pole)")
        return det, (det * np.linalg.inv(a)).tolist()


class _Mp:
    """``mpmath`` arithmetic at the working precision set by the caller."""

    i = mpmath.mpc(0, 1)
    half = mpmath.mpf(1) / 2
    sqrt = staticmethod(mpmath.sqrt)
    exp = staticmethod(mpmath.exp)
    conj = staticmethod(mpmath.conj)

    @staticmethod
    def det_adj(m: list) -> tuple:
        a = mpmath.matrix(m)
        det = mpmath.det(a)
        if det == 0:
            raise ScaleError("chart function vanishes (pole)")
        inv = a ** -1
        return det, [[det * inv[r, c] for c in range(a.cols)] for r in range(a.rows)]


def _sparse_terms(n: int, num) -> list:
    """Terms ``(P, Q)`` of the r-matrix as lists of nonzero ``(row, col, value)``."""
    out = []
    for j in range(1, n):
        c = 1 / num.sqrt(j * (j + 1))
        x = [(k, k, c) for k in range(j)] + [(j, j, -j * c)]
        out.append(([(r, q, num.i * num.half * v) for r, q, v in x], x))
    for a in range(n):
        for b in range(a + 1, n):
            f = [(b, a, 1)]
            out += [
                ([(a, b, num.half)], [(b, a, num.i)]),
                ([(a, b, num.i * num.half)], f),
                ([(b, a, -num.half)], [(b, a, num.i)]),
                ([(b, a, num.i * num.half)], f),
            ]
    return out


def r_matrix_terms(n: int) -> list:
    """Terms ``(P, Q)`` of the real r-matrix of ``sl_n`` (tensors over ``R``).

    Basis: ``E_{ij}`` root vectors (``tr(E_ij E_ji) = 1``) and an orthonormal
    basis ``X_j`` of real traceless diagonal matrices.
    """
    out = []
    for pl, ql in _sparse_terms(n, _Float):
        mats = []
        for nz in (pl, ql):
            m = np.zeros((n, n), dtype=complex)
            for r, c, v in nz:
                m[r, c] = v
            mats.append(m)
        out.append(tuple(mats))
    return out


def _working_dps(p: PTPoint, s: float, n: int) -> int:
    """Digits needed so cancellation in ``n x n`` minors stays below the noise floor."""
    digits = abs(s) * max((abs(float(x)) for x in p.x), default=0.0) / 2 / math.log(10)
    return int(30 + 2 * n * digits)


def chart_values(p: PTPoint, s: float, index: Sequence[int], num=_Float) -> list:
    """``exp(s x_k / 2 + i phi_k)``; variables with negative index stay real."""
    out = []
    angles = iter(p.phi)
    for k, x in zip(index, p.x):
        re = s * float(x) / 2
        if num is _Float and abs(re) > 700:
            raise ScaleError(f"exponent {re:.1f} overflows double precision")
        t = next(angles) if k > 0 else 0.0
        out.append(num.exp(re + num.i * t))
    return out


def _matrix(ctx: _Context, values: list) -> list:
    return [[_as_rf(x, len(values)).evaluate(values) for x in row] for row in ctx.chart.matrix]


def detrop(datum: CartanDatum, word: Sequence[int] | None, s: float, p: PTPoint) -> np.ndarray:
    """The point of ``K^*`` with cluster coordinates ``exp(s x / 2 + i phi)``."""
    if s == 0:
        raise ScaleError("s must be nonzero")
    ctx = _context(datum, word)
    b = evaluate_matrix(ctx.chart.matrix, chart_values(p, s, ctx.index))
    if not np.all(np.isfinite(b)):
        raise ScaleError("group element is not finite")
    return b


def _mul(a: list, b: list) -> list:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _pairings(ctx: _Context, b: list, terms: list, num) -> tuple:
    """Minor values and ``df(P b), df(Q b), df(b P), df(b Q)`` per term."""
    n = ctx.n
    vals, pair = [], []
    for rows, size in ctx.minors:
        ub = _mul([list(r) for r in rows], b)
        det, adj = num.det_adj([row[:size] for row in ub])
        # df(W) = tr(G W) with G = V adj U, V the first size columns
        g = [[sum(adj[i][k] * rows[k][j] for k in range(size)) if i < size else 0 for j in range(n)] for i in range(n)]
        bg, gb = _mul(b, g), _mul(g, b)

        def tr(x, nz):
            return sum(x[c][r] * v for r, c, v in nz)

        pair.append([(tr(bg, pl), tr(bg, ql), tr(gb, pl), tr(gb, ql)) for pl, ql in terms])
        vals.append(det)
    return vals, pair


def _bracket_tables(ctx: _Context, b: list, num) -> tuple:
    terms = _sparse_terms(ctx.n, num)
    vals, pair = _pairings(ctx, b, terms, num)
    nvar = len(vals)
    zz = [[0] * nvar for _ in range(nvar)]
    zb = [[0] * nvar for _ in range(nvar)]
    for i in range(nvar):
        for j in range(nvar):
            hh = hb = 0
            for (fl, _, fr, _), (_, ql, _, qr) in zip(pair[i], pair[j]):
                hh += fl * ql - fr * qr
                hb += fl * num.conj(ql) - fr * num.conj(qr)
            zz[i][j], zb[i][j] = hh, hb
    return vals, zz, zb


def _brackets(ctx: _Context, b) -> tuple:
    """``{z_a, z_b}`` and ``{z_a, conj z_b}`` for all chart functions (double precision)."""
    vals, zz, zb = _bracket_tables(ctx, [[complex(x) for x in row] for row in b], _Float)
    return np.array(vals, dtype=complex), np.array(zz, dtype=complex), np.array(zb, dtype=complex)


def numeric_bracket(datum: CartanDatum, word: Sequence[int] | None, s: float, p: PTPoint, i: int, j: int) -> tuple:
    """``({z_i, z_j}, {z_i, conj z_j})`` under ``pi_{K^*}`` at ``detrop(p)``.

    ``i`` and ``j`` are cluster indices.
    """
    ctx = _context(datum, word)
    _, zz, zb = _brackets(ctx, detrop(datum, word, s, p))
    a, c = ctx.index.index(i), ctx.index.index(j)
    return complex(zz[a, c]), complex(zb[a, c])


def _log_brackets(ctx: _Context, s: float, p: PTPoint, dps: int | None) -> tuple:
    """``{L_a, L_b}`` and ``{L_a, M_b}`` with ``L = log z``, ``M = log conj z``."""
    if dps is None:
        dps = _working_dps(p, s, ctx.n)
    if dps <= 15:
        vals, zz, zb = _brackets(ctx, _matrix(ctx, chart_values(p, s, ctx.index)))
        return zz / np.outer(vals, vals), zb / np.outer(vals, np.conj(vals))
    with mpmath.workdps(dps):
        b = _matrix(ctx, chart_values(p, s, ctx.index, _Mp))
        vals, zz, zb = _bracket_tables(ctx, b, _Mp)
        nvar = len(vals)
        ll = [[complex(zz[a][c] / (vals[a] * vals[c])) for c in range(nvar)] for a in range(nvar)]
        lm = [[complex(zb[a][c] / (vals[a] * mpmath.conj(vals[c]))) for c in range(nvar)] for a in range(nvar)]
    return np.array(ll), np.array(lm)


def pi_s_in_coordinates(
    datum: CartanDatum, word: Sequence[int] | None, s: float, p: PTPoint, dps: int | None = None
) -> dict:
    """Blocks ``{lambda, phi}_s``, ``{lambda, lambda}_s`` and ``{phi, phi}_s`` of ``s pi_{K^*}``.

    With ``L = log z`` and ``M = log conj z``:
    ``lambda = (L + M) / s`` and ``phi = (L - M) / (2i)``.  ``dps`` is the
    number of decimal digits used; by default it grows with ``|s x|`` so that
    cancellation in the minors stays far below :data:`NOISE_FLOOR`.  Values of
    15 or less select hardware floats.
    """
    ctx = _context(datum, word)
    ll, lm = _log_brackets(ctx, s, p, dps)
    ml = -lm.T  # {M_a, L_b}
    mm = np.conj(ll)  # {M_a, M_b}
    cols = [a for a, k in enumerate(ctx.index) if k > 0]
    lam_phi = (ll - lm + ml - mm) / 2j
    lam_lam = (ll + lm + ml + mm) / s
    phi_phi = -s * (ll - lm - ml + mm) / 4
    return {
        "rows": ctx.index,
        "cols": [ctx.index[a] for a in cols],
        "lambda_phi": np.real_if_close(lam_phi[:, cols], tol=1e6),
        "lambda_lambda": np.real_if_close(lam_lam, tol=1e6),
        "phi_phi": np.real_if_close(phi_phi[np.ix_(cols, cols)], tol=1e6),
    }


def pi_limit(datum: CartanDatum, word: Sequence[int] | None = None) -> np.ndarray:
    """Exact limit ``{lambda_j, phi_k}`` as a float matrix."""
    word = tuple(longest_word(datum) if word is None else word)
    return np.array(pt_bracket_matrix(seed_from_word(datum, word)).entries, dtype=float)


def random_pt_point(datum: CartanDatum, word: Sequence[int] | None, delta: float, rng: random.Random) -> PTPoint:
    """A random cone point rescaled to potential margin exactly ``delta``."""
    ctx = _context(datum, word)
    cone = bk_cone(datum, ctx.word, "cluster")
    phi_t = tropicalize(bk_potential_in_chart(ctx.chart))
    base, _ = cone.interior_point()
    scale = float(phi_t(base))
    base = [float(v) / scale for v in base]
    width = max(abs(v) for v in base) or 1.0
    # perturbations keeping at least half the margin stay well inside the cone
    while True:
        x = [v + rng.uniform(-0.25, 0.25) * width for v in base]
        val = float(phi_t([Fraction(v) for v in x]))
        if val >= 0.5:
            break
    x = [v * delta / val for v in x]
    m = sum(1 for k in ctx.index if k > 0)
    return PTPoint(tuple(x), tuple(rng.uniform(0.1, 2 * math.pi - 0.1) for _ in range(m)), delta)


def _fit_slope(s_vals: list, devs: list) -> float | None:
    pts = []
    for s, d in zip(s_vals, devs):
        if d <= NOISE_FLOOR:
            break  # later samples are roundoff, not signal
        pts.append((s, math.log(d)))
    if len(pts) < 2:
        return None
    ms = sum(s for s, _ in pts) / len(pts)
    ml = sum(v for _, v in pts) / len(pts)
    den = sum((s - ms) ** 2 for s, _ in pts)
    return sum((s - ms) * (v - ml) for s, v in pts) / den


def convergence_fit(datum: CartanDatum, word: Sequence[int] | None, p: PTPoint, s_grid: Sequence[float]) -> ConvergenceReport:
    """Fit ``log |pi_s - pi_limit|`` against ``s`` for every bracket.

    Passes iff every fitted slope is at least ``0.75 delta``.

    Raises
    ------
    Inconclusive
        If all samples lie below the noise floor.
    """
    s_grid = sorted(s_grid, reverse=True)
    if not s_grid:
        raise Inconclusive("empty s grid")
    limit = pi_limit(datum, word)
    samples: dict = {}
    worst = []
    for s in s_grid:
        blk = pi_s_in_coordinates(datum, word, s, p)
        entries = {}
        for a, j in enumerate(blk["rows"]):
            for c, k in enumerate(blk["cols"]):
                entries[f"lambda{j},phi{k}"] = abs(blk["lambda_phi"][a, c] - limit[a, c])
            for c, k in enumerate(blk["rows"]):
                if j < k:
                    entries[f"lambda{j},lambda{k}"] = abs(blk["lambda_lambda"][a, c])
        for a, j in enumerate(blk["cols"]):
            for c, k in enumerate(blk["cols"]):
                if j < k:
                    entries[f"phi{j},phi{k}"] = abs(blk["phi_phi"][a, c])
        for key, val in entries.items():
            samples.setdefault(key, []).append(float(val))
        worst.append(max(entries.values()))
    slopes = {}
    zeros = []
    for key, devs in samples.items():
        if devs[0] < SIGNAL_FLOOR:
            zeros.append(key)
            continue
        sl = _fit_slope(s_grid, devs)
        if sl is not None:
            slopes[key] = sl
    if not slopes:
        raise Inconclusive("all deviations are below the noise floor")
    slope = min(slopes.values())
    return ConvergenceReport(list(s_grid), samples, slopes, slope, p.delta, slope >= 0.75 * p.delta, worst, zeros)
