"""Comparison between a group's charts and those of its Langlands dual.

The comparison sends a dual cluster variable to ``z_j^{d_{|i_j|}}``, so its
tropicalization is diagonal: ``x_j -> d_{|i_j|} x_j`` on cluster coordinates
and ``psi_h`` on the torus factor.  In simple-coroot coordinates on both
sides ``psi_h`` is ``diag(d)`` as well, because ``alpha_i`` of ``G`` is the
simple coroot ``alpha_i^vee`` of the dual.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cartan import CartanDatum, check_reduced, dual_datum, longest_word
from .lp import solve_lp
from .symgroup import build_chart, generalized_minor, seed_minor_data, twist
from .tropical import ConeH, form_chambers, hw_trop, sample_chamber, tropicalize, wt_trop

__all__ = [
    "ComparisonMap",
    "comparison_trop",
    "comparison_unreduced",
    "implication_certificate",
    "verify_real_cone_isomorphism",
    "lattice_injectivity",
    "diagrams_commute",
    "twist_forms",
    "verify_twist_compat",
]


@dataclass(frozen=True)
class ComparisonMap:
    """Diagonal comparison on ``(torus, reduced)`` coordinates.

    Attributes
    ----------
    diag : tuple
        ``d_{|i_j|}`` for the reduced (or cluster) coordinates.
    h_block : tuple of tuples
        ``psi_h`` on the torus factor in simple-coroot coordinates.
    """

    diag: tuple
    h_block: tuple

    @property
    def matrix(self) -> list:
        r = len(self.h_block)
        n = r + len(self.diag)
        out = [[0] * n for _ in range(n)]
        for i in range(r):
            for j in range(r):
                out[i][j] = self.h_block[i][j]
        for k, dk in enumerate(self.diag):
            out[r + k][r + k] = dk
        return out

    @property
    def det(self) -> int:
        return int(linalg.det(self.matrix))

    def __call__(self, x: Sequence) -> list:
        return linalg.matvec(self.matrix, x)

    def inverse_matrix(self) -> list:
        return linalg.inverse(self.matrix)

    def unimodular(self) -> bool:
        return abs(self.det) == 1


def comparison_trop(datum: CartanDatum, word: Sequence[int] | None = None) -> ComparisonMap:
    """Tropical comparison map on reduced-chart coordinates ``(b, zbar_L)``."""
    word = longest_word(datum) if word is None else check_reduced(datum, word, longest=True)
    chart = build_chart(datum, word, "reduced")
    d = datum.symmetrizer
    diag = tuple(d[(-k if k < 0 else word[k - 1]) - 1] for k in chart.indices)
    h = tuple(tuple(d[i] if i == j else 0 for j in range(datum.rank)) for i in range(datum.rank))
    return ComparisonMap(diag, h)


def comparison_unreduced(datum: CartanDatum, word: Sequence[int] | None = None) -> ComparisonMap:
    """Comparison on the unreduced cluster chart (no separate torus block)."""
    word = longest_word(datum) if word is None else check_reduced(datum, word, longest=True)
    d = datum.symmetrizer
    diag = tuple(d[i - 1] for i in range(datum.rank, 0, -1)) + tuple(d[i - 1] for i in word)
    return ComparisonMap(diag, ())


def implication_certificate(source: ConeH, normal: Sequence) -> list | None:
    """Multipliers ``y >= 0`` with ``sum_k y_k n_k = normal`` over the rows of ``source``.

    Such ``y`` proves ``<normal, x> >= 0`` on the cone; ``None`` if none exist.
    """
    rows = [n for n, _ in source.halfspaces]
    dim = source.ambient_dim
    a_eq = [[rows[k][j] for k in range(len(rows))] for j in range(dim)]
    res = solve_lp([0] * len(rows), a_eq=a_eq, b_eq=list(normal), nonneg=True)
    if res.status != "optimal":
        return None
    y = res.x
    assert all(v >= 0 for v in y)
    assert all(sum(y[k] * rows[k][j] for k in range(len(rows))) == normal[j] for j in range(dim))
    return y


def _violating_point(source: ConeH, normal: Sequence) -> list:
    """A point of the cone (inside the unit box) where ``<normal, x> < 0``."""
    dim = source.ambient_dim
    a_ub, b_ub, _, _ = source.lp_data()
    box = [[int(i == j) for j in range(dim)] for i in range(dim)]
    a_ub = a_ub + box + [[-v for v in r] for r in box]
    b_ub = list(b_ub) + [1] * (2 * dim)
    return solve_lp(list(normal), a_ub, b_ub).x


def _pull(normal: Sequence, matrix: Sequence[Sequence]) -> list:
    return [sum(Fraction(normal[i]) * matrix[i][j] for i in range(len(normal))) for j in range(len(matrix[0]))]


def verify_real_cone_isomorphism(cone: ConeH, cone_dual: ConeH, cmap: ComparisonMap) -> tuple:
    """Double inclusion ``Psi(cone) = cone_dual`` certified row by row.

    Returns
    -------
    (bool, dict)
        The dict holds the nonnegative multipliers for every row of each
        target, or a violating point for the first failing row.
    """
    m = cmap.matrix
    minv = cmap.inverse_matrix()
    certs = {"forward": [], "backward": []}
    for nv, _ in cone_dual.halfspaces:
        pulled = _pull(nv, m)
        y = implication_certificate(cone, pulled)
        if y is None:
            return False, {"direction": "forward", "row": nv, "point": _violating_point(cone, pulled)}
        certs["forward"].append(y)
    for nv, _ in cone.halfspaces:
        pulled = _pull(nv, minv)
        y = implication_certificate(cone_dual, pulled)
        if y is None:
            return False, {"direction": "backward", "row": nv, "point": _violating_point(cone_dual, pulled)}
        certs["backward"].append(y)
    return True, certs


def lattice_injectivity(cone: ConeH, cone_dual: ConeH, cmap: ComparisonMap, samples: int = 200, seed: int = 0) -> bool:
    """Sampled integral points map to distinct integral points of ``cone_dual``."""
    rng = random.Random(seed)
    p, slack = cone.interior_point()
    norm = max(sum(abs(x) for x in nv) for nv, _ in cone.halfspaces)
    pts = set()
    tries = 0
    while len(pts) < samples and tries < 100 * samples:
        tries += 1
        k = rng.randint(1, 12)
        q = tuple(
            int(round(k * (2 * norm / slack) * x)) + rng.randint(-3, 3) for x in p
        )
        if cone.contains(q):
            pts.add(q)
    if len(pts) < samples:
        return False
    images = set()
    for q in pts:
        im = tuple(cmap(q))
        if not all(Fraction(v).denominator == 1 for v in im) or not cone_dual.contains(im):
            return False
        images.add(im)
    return len(images) == len(pts)


def diagrams_commute(datum: CartanDatum, word: Sequence[int] | None = None) -> dict:
    """``hw_dual^t Psi^t = psi_h hw^t`` and the same for ``wt`` (reduced charts, coroot basis)."""
    word = longest_word(datum) if word is None else tuple(word)
    dual = dual_datum(datum)
    cmap = comparison_trop(datum, word)
    psi = [list(r) for r in cmap.h_block]
    out = {}
    for name, fn in (("hw", hw_trop), ("wt", wt_trop)):
        g = fn(datum, word, "reduced", "coroot")
        gd = fn(dual, word, "reduced", "coroot")
        out[name] = linalg.matmul(gd, cmap.matrix) == linalg.matmul(psi, g)
    return out


def twist_forms(datum: CartanDatum, word: Sequence[int]) -> list:
    """Tropical forms of the twist map in the unreduced cluster chart."""
    chart = build_chart(datum, word, "cluster")
    z = twist(chart.carrier, chart.matrix)
    return [tropicalize(generalized_minor(chart.carrier, u, (), i, z)) for _, u, i in seed_minor_data(datum, tuple(word))]


def verify_twist_compat(datum: CartanDatum, word: Sequence[int] | None = None, points_per_chamber: int = 50, seed: int = 0) -> bool:
    """``zeta_dual^t o Psi^t = Psi^t o zeta^t`` on sampled points of every chamber."""
    word = longest_word(datum) if word is None else check_reduced(datum, word, longest=True)
    dual = dual_datum(datum)
    forms = twist_forms(datum, word)
    forms_dual = twist_forms(dual, word)
    cmap = comparison_unreduced(datum, word)
    n = len(cmap.diag)
    rng = random.Random(seed)
    for cone, _ in form_chambers(forms, n):
        for x in sample_chamber(cone, points_per_chamber, rng):
            px = cmap(x)
            lhs = [f(px) for f in forms_dual]
            rhs = cmap([f(x) for f in forms])
            if lhs != rhs:
                return False
    return True
