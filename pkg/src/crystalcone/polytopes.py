"""hw-fibers of BK cones, their lattice points and volumes.

Counting convention
-------------------
Weight multiplicities of ``V_lambda`` for a group ``G`` are read off the BK
cone of the Langlands dual datum ``G^vee`` in its reduced chart, with torus
coordinates in the fundamental coweight basis of ``G^vee`` (its adjoint
cocharacter lattice).  In that basis ``hw^t`` is the projection onto the
torus coordinates, a coweight of ``G^vee`` is a weight of ``G``, and the
fiber over ``lambda`` is the string polytope.  ``raw_cone=True`` skips the
dual swap.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import fm, kernels, linalg
from .cartan import CartanDatum, dual_datum, longest_word
from .errors import Unbounded
from .lp import solve_lp
from .tropical import ConeH, bk_cone, hw_trop, wt_trop

__all__ = [
    "Polytope",
    "LatticePointSet",
    "hw_fiber",
    "enumerate_lattice_points",
    "string_polytope",
    "count_dim",
    "count_weight",
    "weight_counts",
    "polytope_volume",
]

_INT64_SAFE = 1 << 62


@dataclass
class Polytope:
    """A fiber ``{x in cone : H x = lambda}`` parametrized over its lattice.

    Attributes
    ----------
    cone : ConeH
        Real description in ambient coordinates (fiber equations included).
    x0, kernel :
        Integral points of the affine span are ``x0 + kernel t``; ``None``
        when the span carries no lattice point.
    rows : list of tuple
        Integer rows ``(n, c)`` in the ``t`` coordinates.
    weight_map : list or None
        Integer matrix sending ambient points to weights.
    """

    cone: ConeH
    x0: list | None
    kernel: list | None
    rows: list
    weight_map: list | None = None
    _systems: list | None = field(default=None, repr=False)
    _bounds: list | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return 0 if self.kernel is None else len(self.kernel[0]) if self.kernel and self.kernel[0] else 0

    def is_empty(self) -> bool:
        """Real emptiness, decided by exact LP."""
        return self.cone.emptiness_certificate() is not None

    def emptiness_certificate(self):
        return self.cone.emptiness_certificate()

    def to_ambient(self, t: Sequence) -> tuple:
        return tuple(
            self.x0[i] + sum(self.kernel[i][j] * t[j] for j in range(len(t))) for i in range(len(self.x0))
        )

    def bounds(self) -> list:
        """Exact ``(min, max)`` of every ``t`` coordinate.

        Raises
        ------
        Unbounded
            If some coordinate is unbounded on a nonempty polytope.
        """
        if self._bounds is None:
            d = self.dim
            a_ub = [[-x for x in r[:-1]] for r in self.rows]
            b_ub = [r[-1] for r in self.rows]
            out = []
            for j in range(d):
                e = [0] * d
                e[j] = 1
                lo = solve_lp(e, a_ub, b_ub)
                hi = solve_lp(e, a_ub, b_ub, maximize=True)
                if "unbounded" in (lo.status, hi.status):
                    raise Unbounded(f"coordinate {j} is unbounded on the fiber")
                if lo.status == "infeasible":
                    out = None
                    break
                out.append((lo.value, hi.value))
            self._bounds = out
        return self._bounds

    def systems(self) -> list:
        if self._systems is None:
            self._systems = fm.prefix_systems(self.rows, self.dim)
        return self._systems


@dataclass
class LatticePointSet:
    """Lattice points of a polytope with their weights."""

    points: list
    counts_by_weight: dict

    def __len__(self) -> int:
        return len(self.points)


def hw_fiber(cone: ConeH, hw_map: Sequence[Sequence[int]], lam: Sequence, weight_map=None) -> Polytope:
    """The fiber ``cone ∩ {hw_map x = lam}``."""
    n = cone.ambient_dim
    eqs = [(tuple(row), -Fraction(l)) for row, l in zip(hw_map, lam)]
    full = ConeH.make(cone.halfspaces, tuple(cone.equations) + tuple(eqs), n, cone.names)
    a = [list(row) for row, _ in full.equations]
    b = [-c for _, c in full.equations]
    sol = linalg.integer_solutions(a, b) if a else ([0] * n, linalg.identity(n))
    if sol is None:
        return Polytope(full, None, None, [], weight_map)
    x0, ker = sol
    k = len(ker[0]) if ker and ker[0] else 0
    rows = []
    for nv, c in full.halfspaces:
        new = [sum(nv[i] * ker[i][j] for i in range(n)) for j in range(k)]
        off = c + sum(nv[i] * x0[i] for i in range(n))
        rows.append(fm.normalize_row(tuple(new) + (off,)))
    return Polytope(full, x0, ker, rows, weight_map)


def _fits_int64(poly: Polytope, bounds) -> bool:
    big = max((abs(x) for lo, hi in bounds for x in (lo, hi)), default=0) + 1
    for sysk in poly.systems():
        for r in sysk:
            if sum(abs(x) for x in r[:-1]) * big + abs(r[-1]) >= _INT64_SAFE:
                return False
    return True


def enumerate_lattice_points(poly: Polytope, backend=None) -> LatticePointSet:
    """Exact lattice points, lexicographic in the fiber coordinates."""
    if poly.x0 is None:
        return LatticePointSet([], {})
    d = poly.dim
    if d == 0:
        pts = [tuple(poly.x0)] if poly.cone.contains(poly.x0) else []
    else:
        bounds = poly.bounds()
        if bounds is None:
            return LatticePointSet([], {})
        first = (_ceil(bounds[0][0]), _floor(bounds[0][1]))
        be = backend
        if be is None and not _fits_int64(poly, bounds):
            be = kernels.load_backend(pure=True)
        ts = kernels.enumerate_points(poly.systems(), d, first, backend=be)
        pts = [poly.to_ambient(t) for t in ts]
    counts: Counter = Counter()
    if poly.weight_map is not None:
        for p in pts:
            counts[tuple(int(sum(w * x for w, x in zip(row, p))) for row in poly.weight_map)] += 1
    return LatticePointSet(pts, dict(counts))


def _ceil(q) -> int:
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)


def _floor(q) -> int:
    q = Fraction(q)
    return q.numerator // q.denominator


def string_polytope(datum: CartanDatum, word: Sequence[int] | None, lam: Sequence, raw_cone: bool = False) -> Polytope:
    """Fiber over ``lam`` of the reduced-chart BK cone of the dual datum."""
    x = datum if raw_cone else dual_datum(datum)
    word = tuple(word) if word is not None else longest_word(x)
    cone = bk_cone(x, word, "reduced", "coweight")
    hw = hw_trop(x, word, "reduced", "coweight")
    wt = wt_trop(x, word, "reduced", "coweight")
    return hw_fiber(cone, hw, lam, wt)


def count_dim(datum: CartanDatum, word: Sequence[int] | None, lam: Sequence, raw_cone: bool = False) -> int:
    """Number of lattice points of the string polytope over ``lam``."""
    return len(enumerate_lattice_points(string_polytope(datum, word, lam, raw_cone)))


def weight_counts(datum: CartanDatum, word: Sequence[int] | None, lam: Sequence, raw_cone: bool = False) -> dict:
    return enumerate_lattice_points(string_polytope(datum, word, lam, raw_cone)).counts_by_weight


def count_weight(
    datum: CartanDatum, word: Sequence[int] | None, lam: Sequence, nu: Sequence, raw_cone: bool = False
) -> int:
    return weight_counts(datum, word, lam, raw_cone).get(tuple(nu), 0)


# ---------------------------------------------------------------------------
# volume


def _volume_rows(rows: list, d: int) -> Fraction:
    """Lattice-normalized volume of ``{t : n.t + c >= 0}`` in ``R^d``.

    Recursion ``vol = (1/d) sum_F c_F vol(pi_j F) / |n_j|`` with the origin as
    reference point and ``pi_j`` the projection forgetting a coordinate with
    ``n_j != 0``.
    """
    rows = fm._dedup(rows)
    if any(all(x == 0 for x in r[:-1]) and r[-1] < 0 for r in rows):
        return Fraction(0)
    if d == 1:
        lo = hi = None
        for r in rows:
            a, c = r[0], r[-1]
            if a > 0:
                v = Fraction(-c, a)
                lo = v if lo is None or v > lo else lo
            elif a < 0:
                v = Fraction(-c, a)
                hi = v if hi is None or v < hi else hi
        if lo is None or hi is None:
            raise Unbounded("unbounded interval")
        return max(Fraction(0), hi - lo)
    total = Fraction(0)
    for r in rows:
        c = r[-1]
        if c == 0 or all(x == 0 for x in r[:-1]):
            continue
        j = next(i for i in range(d) if r[i])
        nj = r[j]
        sub = []
        for s in rows:
            if s == r:
                continue
            # substitute t_j = -(c + sum_{i != j} r_i t_i) / nj
            f = Fraction(s[j], nj)
            new = [Fraction(s[i]) - f * r[i] for i in range(d) if i != j]
            new.append(Fraction(s[-1]) - f * c)
            sub.append(tuple(new))
        total += Fraction(c) * _volume_rows(sub, d - 1) / abs(nj)
    return total / d


def polytope_volume(poly: Polytope) -> Fraction:
    """Volume in units of the fiber lattice (a fundamental domain has volume one)."""
    if poly.x0 is None or poly.is_empty():
        return Fraction(0)
    d = poly.dim
    if d == 0:
        return Fraction(1)
    poly.bounds()
    return _volume_rows(list(poly.rows), d)
