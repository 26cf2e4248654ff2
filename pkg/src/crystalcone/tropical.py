"""Tropicalization of positive Laurent expressions and the resulting cones.

Conventions
-----------
A tropical form is ``x -> min_gamma <gamma, x> - min_delta <delta, x>`` over
the numerator and denominator supports.  A :class:`ConeH` row ``(n, c)``
means ``<n, x> + c >= 0``.  Cones produced from potentials have one row per
distinct exponent of the potential, so no information is lost before the
caller asks for pruning.

Torus coordinates of reduced charts can be reported in two bases:
``"coroot"`` (the cocharacter lattice of the simply connected group, where
``b_i = h^{omega_i}`` pairs with ``y`` directly) and ``"coweight"`` (the
fundamental coweight basis, i.e. the cocharacter lattice of the adjoint
group, with ``c = A^T y``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cartan import CartanDatum, longest_word, star
from .cluster import Seed, mutate
from .errors import ChartUnsupported, PositivityViolation
from .fm import normalize_row
from .laurent import LaurentPoly, RationalFunction
from .lp import farkas_certificate, interior_point, solve_lp
from .symgroup import (
    Chart,
    bk_potential_in_chart,
    build_chart,
    potential_pair,
    string_potential_in_chart,
)

__all__ = [
    "TropicalForm",
    "tropicalize",
    "ConeH",
    "PLMap",
    "potential_cone",
    "bk_cone",
    "string_cone",
    "hw_trop",
    "wt_trop",
    "torsion_free_cokernel",
    "trop_chart_change",
    "trop_mutation",
    "form_chambers",
    "sample_chamber",
]


@dataclass(frozen=True)
class TropicalForm:
    """Min-plus form ``min <gamma, x> - min <delta, x>``.

    Attributes
    ----------
    covectors : tuple
        Numerator support.
    den_covectors : tuple
        Denominator support; a single vector is the monomial offset.
    """

    covectors: tuple
    den_covectors: tuple

    @property
    def offset(self):
        if len(self.den_covectors) != 1:
            raise ValueError("denominator is not a monomial")
        return self.den_covectors[0]

    @property
    def nvars(self) -> int:
        return len(self.covectors[0])

    def __call__(self, x: Sequence) -> Fraction:
        num = min(sum(g * v for g, v in zip(c, x)) for c in self.covectors)
        den = min(sum(g * v for g, v in zip(c, x)) for c in self.den_covectors)
        return num - den

    def __add__(self, other: "TropicalForm") -> "TropicalForm":
        """Tropical product (the form of ``f g``)."""
        num = {tuple(a + b for a, b in zip(p, q)) for p in self.covectors for q in other.covectors}
        den = {tuple(a + b for a, b in zip(p, q)) for p in self.den_covectors for q in other.den_covectors}
        return TropicalForm(tuple(sorted(num)), tuple(sorted(den)))

    def halfspaces(self) -> list:
        """Rows of ``{x : form(x) >= 0}`` when the denominator is a monomial."""
        off = self.offset
        return [(tuple(a - b for a, b in zip(c, off)), 0) for c in self.covectors]


def _positive_support(p: LaurentPoly, what: str) -> tuple:
    if p.is_zero():
        raise PositivityViolation(f"{what} is zero")
    if not p.is_positive():
        raise PositivityViolation(f"{what} has a nonpositive coefficient")
    return tuple(sorted(p.terms))


def tropicalize(f) -> TropicalForm:
    """Tropicalize a subtraction-free expression.

    Parameters
    ----------
    f : LaurentPoly, RationalFunction or (numerator, denominator) pair
    """
    if isinstance(f, LaurentPoly):
        num, den = potential_pair(f) if not f.is_zero() else (f, f)
    elif isinstance(f, RationalFunction):
        num, den = f.num, f.den
    else:
        num, den = f
    return TropicalForm(_positive_support(num, "numerator"), _positive_support(den, "denominator"))


@dataclass(frozen=True)
class ConeH:
    """Exact H-description: rows ``(n, c)`` with ``<n,x> + c >= 0`` and equations ``<n,x> + c = 0``.

    Attributes
    ----------
    halfspaces : tuple of (tuple, Fraction)
    equations : tuple of (tuple, Fraction)
    ambient_dim : int
    names : tuple of str
    """

    halfspaces: tuple
    equations: tuple = ()
    ambient_dim: int = 0
    names: tuple = field(default=(), compare=False)

    @classmethod
    def make(cls, halfspaces, equations=(), ambient_dim=None, names=()) -> "ConeH":
        hs = []
        seen = set()
        for n, c in halfspaces:
            key = (tuple(Fraction(x) for x in n), Fraction(c))
            if key not in seen:
                seen.add(key)
                hs.append(key)
        eqs = []
        for n, c in equations:
            key = (tuple(Fraction(x) for x in n), Fraction(c))
            if key not in eqs:
                eqs.append(key)
        if ambient_dim is None:
            ambient_dim = len((hs or eqs)[0][0])
        for n, _ in hs + eqs:
            if len(n) != ambient_dim:
                raise ValueError("inconsistent arity")
        return cls(tuple(hs), tuple(eqs), ambient_dim, tuple(names))

    @property
    def is_cone(self) -> bool:
        return all(c == 0 for _, c in self.halfspaces + self.equations)

    def rows(self) -> list:
        """Inequality rows ``n + (c,)``; each equation contributes two rows."""
        out = [tuple(n) + (c,) for n, c in self.halfspaces]
        for n, c in self.equations:
            out.append(tuple(n) + (c,))
            out.append(tuple(-x for x in n) + (-c,))
        return out

    def primitive(self) -> "ConeH":
        """Rows rescaled to primitive integer vectors, duplicates removed."""
        hs = [(r[:-1], r[-1]) for r in (normalize_row(tuple(n) + (c,)) for n, c in self.halfspaces)]
        return ConeH.make(hs, self.equations, self.ambient_dim, self.names)

    def contains(self, x: Sequence, strict: bool = False, margin=0) -> bool:
        for n, c in self.halfspaces:
            v = sum(a * b for a, b in zip(n, x)) + c
            if v < margin or (strict and v <= margin):
                return False
        return all(sum(a * b for a, b in zip(n, x)) + c == 0 for n, c in self.equations)

    def lp_data(self) -> tuple:
        """``(a_ub, b_ub, a_eq, b_eq)`` for :mod:`crystalcone.lp`."""
        a_ub = [[-x for x in n] for n, _ in self.halfspaces]
        b_ub = [c for _, c in self.halfspaces]
        a_eq = [list(n) for n, _ in self.equations]
        b_eq = [-c for _, c in self.equations]
        return a_ub, b_ub, a_eq, b_eq

    def interior_point(self):
        """``(point, slack)`` maximizing the smallest slack, capped at one."""
        a_ub, b_ub, a_eq, b_eq = self.lp_data()
        if not a_ub:
            return [Fraction(0)] * self.ambient_dim, Fraction(1)
        return interior_point(a_ub, b_ub, a_eq, b_eq)

    def has_interior(self) -> bool:
        _, slack = self.interior_point()
        return slack is not None and slack > 0

    def emptiness_certificate(self):
        """Farkas certificate of emptiness, or ``None`` if nonempty."""
        return farkas_certificate(*self.lp_data())

    def implies(self, normal: Sequence, offset=0) -> bool:
        """True when ``<normal, x> + offset >= 0`` holds on the whole set."""
        a_ub, b_ub, a_eq, b_eq = self.lp_data()
        res = solve_lp(list(normal), a_ub, b_ub, a_eq, b_eq)
        if res.status == "infeasible":
            return True
        if res.status == "unbounded":
            return False
        return res.value + offset >= 0

    def delta_interior_contains(self, x: Sequence, delta) -> bool:
        """Membership in ``{x : min_j (<n_j, x> + c_j) > delta}``."""
        return self.contains(x, strict=True, margin=delta)

    def facets(self) -> "ConeH":
        """Irredundant description (exact LP per row)."""
        prim = self.primitive()
        keep = list(prim.halfspaces)
        i = 0
        while i < len(keep):
            others = ConeH.make(keep[:i] + keep[i + 1:], prim.equations, self.ambient_dim)
            if others.halfspaces and others.implies(*keep[i]):
                keep.pop(i)
            else:
                i += 1
        return ConeH.make(keep, prim.equations, self.ambient_dim, self.names)

    def transform(self, matrix: Sequence[Sequence]) -> "ConeH":
        """Preimage under ``x -> matrix x`` (rows ``n`` become ``n matrix``)."""
        cols = len(matrix[0])
        hs = [
            (tuple(sum(n[i] * matrix[i][j] for i in range(len(n))) for j in range(cols)), c)
            for n, c in self.halfspaces
        ]
        eqs = [
            (tuple(sum(n[i] * matrix[i][j] for i in range(len(n))) for j in range(cols)), c)
            for n, c in self.equations
        ]
        return ConeH.make(hs, eqs, cols)


# ---------------------------------------------------------------------------
# cones of potentials


def _torus_conversion(datum: CartanDatum, chart: Chart, torus_basis: str):
    """Matrix turning chart exponent vectors into functionals on the requested coordinates."""
    n = chart.nvars
    conv = linalg.identity(n)
    if torus_basis == "coweight" and chart.torus:
        # mu . y = (A^{-1} mu) . c with c = A^T y
        ainv = linalg.inverse(datum.cartan)
        r = chart.torus
        for i in range(r):
            for j in range(r):
                conv[i][j] = ainv[j][i]
    elif torus_basis not in ("coroot", "coweight"):
        raise ValueError(f"unknown torus basis {torus_basis!r}")
    return conv


def _convert(vec: Sequence, conv) -> tuple:
    return tuple(sum(Fraction(vec[i]) * conv[i][j] for i in range(len(vec))) for j in range(len(vec)))


def potential_cone(potential: LaurentPoly, names=(), conv=None) -> ConeH:
    """``{x : potential^t(x) >= 0}``, one row per distinct exponent."""
    if not potential.is_positive():
        raise PositivityViolation("potential has a nonpositive coefficient")
    rows = []
    for e in sorted(potential.terms):
        n = _convert(e, conv) if conv is not None else tuple(Fraction(x) for x in e)
        rows.append((n, 0))
    return ConeH.make(rows, (), potential.nvars, names)


def bk_cone(
    datum: CartanDatum,
    word: Sequence[int] | None = None,
    chart_kind: str = "cluster",
    torus_basis: str = "coroot",
    chart: Chart | None = None,
) -> ConeH:
    """Tropicalized BK potential in a chart of ``G^{w0,e}``.

    An explicit ``chart`` (for instance a mutated one) overrides
    ``word`` and ``chart_kind``.
    """
    chart = chart or build_chart(datum, word, chart_kind)
    phi = bk_potential_in_chart(chart)
    return potential_cone(phi, chart.names, _torus_conversion(datum, chart, torus_basis))


def string_cone(datum: CartanDatum, word: Sequence[int] | None = None) -> ConeH:
    """``{t : Phi_L^t(t) >= 0}`` in the twisted reduced chart of the reduced cell."""
    chart = build_chart(datum, word, "twisted_reduced_L")
    return potential_cone(string_potential_in_chart(chart), chart.names)


# ---------------------------------------------------------------------------
# hw and wt


def _minor_exponent(chart: Chart, u, i: int) -> tuple:
    lp = chart.minor(u, (), i)
    try:
        lp = lp.as_laurent()
    except Exception as exc:
        raise ChartUnsupported(f"minor for node {i} is not Laurent in this chart") from exc
    if not lp.is_monomial():
        raise ChartUnsupported(f"minor for node {i} is not a monomial in this chart")
    e, _ = lp.monomial_data()
    return e


def _output_conversion(datum: CartanDatum, rows: list, torus_basis: str) -> list:
    if torus_basis == "coweight":
        at = linalg.transpose(datum.cartan)
        rows = linalg.matmul(at, rows)
    return rows


def hw_trop(
    datum: CartanDatum,
    word: Sequence[int] | None = None,
    chart_kind: str = "cluster",
    torus_basis: str = "coroot",
    chart: Chart | None = None,
) -> list:
    """Matrix of ``hw^t``: rows are coweight components, columns chart coordinates.

    Uses ``<w0 omega_i, hw^t> = (Delta_{w0 omega_i, omega_i})^t`` and
    ``w0 omega_i = -omega_{i*}``.
    """
    chart = chart or build_chart(datum, word, chart_kind)
    if chart.kind.endswith("_L"):
        raise ChartUnsupported("hw is not defined on the reduced cell alone")
    conv = _torus_conversion(datum, chart, torus_basis)
    w0 = longest_word(datum)
    r = datum.rank
    rows = [None] * r
    for i in range(1, r + 1):
        e = _convert(_minor_exponent(chart, w0, i), conv)
        rows[star(datum, i) - 1] = [-x for x in e]
    return linalg.to_int(_output_conversion(datum, rows, torus_basis))


def wt_trop(
    datum: CartanDatum,
    word: Sequence[int] | None = None,
    chart_kind: str = "cluster",
    torus_basis: str = "coroot",
    chart: Chart | None = None,
) -> list:
    """Matrix of ``wt^t`` from ``<omega_i, wt^t> = (Delta_{omega_i, omega_i})^t``."""
    chart = chart or build_chart(datum, word, chart_kind)
    if chart.kind.endswith("_L"):
        raise ChartUnsupported("wt is not defined on the reduced cell alone")
    conv = _torus_conversion(datum, chart, torus_basis)
    rows = [list(_convert(_minor_exponent(chart, (), i), conv)) for i in range(1, datum.rank + 1)]
    return linalg.to_int(_output_conversion(datum, rows, torus_basis))


def torsion_free_cokernel(matrix: Sequence[Sequence[int]]) -> bool:
    """All nonzero Smith invariants of ``matrix`` equal one."""
    return all(x == 1 for x in linalg.smith_diagonal(matrix) if x)


# ---------------------------------------------------------------------------
# tropical chart changes


def trop_mutation(seed: Seed, k: int, x: Sequence) -> list:
    """Tropical exchange relation ``x'_k = min(P^t, N^t) - x_k``."""
    p = seed.pos(k)
    col = [row[p] for row in seed.matrix]
    pos = sum(c * v for c, v in zip(col, x) if c > 0)
    neg = sum(-c * v for c, v in zip(col, x) if c < 0)
    out = list(x)
    out[p] = min(pos, neg) - x[p]
    return out


def _step_matrices(seed: Seed, k: int) -> tuple:
    """Linear pieces of one tropical mutation and the chamber normal ``P^t - N^t``."""
    n = len(seed.index)
    p = seed.pos(k)
    col = [row[p] for row in seed.matrix]
    pieces = []
    for side in (1, -1):
        m = linalg.identity(n)
        m[p] = [Fraction(side * c) if side * c > 0 else Fraction(0) for c in col]
        m[p][p] -= 1
        pieces.append(m)
    normal = [Fraction(c) for c in col]  # P^t - N^t = sum_j M_jk x_j
    return pieces, normal


@dataclass
class PLMap:
    """A piecewise linear map given by a list of tropical mutations.

    Attributes
    ----------
    steps : list of (Seed, int)
        Seed before each mutation and its direction.
    dim : int
    """

    steps: list
    dim: int

    def __call__(self, x: Sequence) -> list:
        x = [Fraction(v) for v in x]
        for seed, k in self.steps:
            x = trop_mutation(seed, k, x)
        return x

    @property
    def chambers(self) -> list:
        """``(ConeH domain, matrix, offset)`` pieces with nonempty interior."""
        if not self.steps:
            return [(ConeH.make([], (), self.dim), linalg.identity(self.dim), [Fraction(0)] * self.dim)]
        out = []
        data = [_step_matrices(s, k) for s, k in self.steps]
        for pattern in itertools.product((0, 1), repeat=len(self.steps)):
            comp = linalg.identity(self.dim)
            rows = []
            for (pieces, normal), side in zip(data, pattern):
                # side 0 uses P^t (valid where P^t <= N^t)
                v = [sum(normal[i] * comp[i][j] for i in range(self.dim)) for j in range(self.dim)]
                rows.append((tuple(-x for x in v) if side == 0 else tuple(v), 0))
                comp = linalg.matmul(pieces[side], comp)
            cone = ConeH.make(rows, (), self.dim)
            if cone.has_interior():
                out.append((cone, comp, [Fraction(0)] * self.dim))
        return out


def trop_chart_change(source: Seed, target: Seed) -> PLMap:
    """Tropical coordinate change from the chart of ``source`` to that of ``target``.

    Both seeds must come from the same initial seed; the path undoes the
    mutations of ``source`` and then replays those of ``target``.
    """
    if source.index != target.index or source.word != target.word or source.datum != target.datum:
        raise ValueError("seeds are not mutation equivalent through tracked histories")
    steps = []
    seed = source
    for k in reversed(source.history):
        steps.append((seed, k))
        seed = mutate(seed, k)
    for k in target.history:
        steps.append((seed, k))
        seed = mutate(seed, k)
    if seed.matrix != target.matrix:
        raise ValueError("mutation path does not reach the target seed")
    return PLMap(steps, len(source.index))


def form_chambers(forms: Sequence[TropicalForm], dim: int) -> list:
    """Linearity chambers of a tuple of tropical forms.

    Returns ``(ConeH, choice)`` pairs with nonempty interior, where
    ``choice[f]`` is the pair of indices (numerator, denominator) of the
    covectors attaining the minima of form ``f`` on the chamber.
    """
    options = []
    for f in forms:
        options.append([(a, b) for a in range(len(f.covectors)) for b in range(len(f.den_covectors))])
    out = []
    for choice in itertools.product(*options):
        rows = []
        for f, (a, b) in zip(forms, choice):
            for sup, idx in ((f.covectors, a), (f.den_covectors, b)):
                for q, other in enumerate(sup):
                    if q != idx:
                        rows.append((tuple(Fraction(x) - y for x, y in zip(other, sup[idx])), 0))
        cone = ConeH.make(rows, (), dim) if rows else ConeH.make([], (), dim)
        if not rows or cone.has_interior():
            out.append((cone, choice))
    return out


def sample_chamber(cone: ConeH, count: int, rng, spread: int = 3) -> list:
    """Rational points strictly inside a cone, near a scaled interior point."""
    n = cone.ambient_dim
    if not cone.halfspaces:
        return [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(count)]
    p, slack = cone.interior_point()
    norm = max(sum(abs(x) for x in nv) for nv, _ in cone.halfspaces)
    scale = 2 * spread * norm / slack + 1
    out = []
    while len(out) < count:
        q = [scale * rng.randint(1, 3) * x + Fraction(rng.randint(-spread * 4, spread * 4), 4) for x in p]
        if cone.contains(q, strict=True):
            out.append(q)
    return out
