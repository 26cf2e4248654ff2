"""The constant Poisson structure of the partial tropicalization.

Coordinates are ``lambda_j = z_j^t`` (one per cluster index) and angles
``phi_k`` for ``k in [1, m]``.  Bracket coefficients are purely imaginary
rationals; this module stores their imaginary parts.

For the initial seed of a word the brackets follow from the degrees of the
cluster variables.  Two independent routes are provided (degree formula and
closed form along the word) so they can be cross-checked.  Charts reached by
mutation are out of scope and raise :class:`ChartUnsupported`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cartan import CartanDatum, bilinear_weights, star, weyl_act
from .cluster import Seed
from .errors import ChartUnsupported

__all__ = [
    "PTBracketMatrix",
    "DarbouxChange",
    "c_coefficients",
    "pt_bracket_matrix",
    "special_chart_brackets",
    "triangular_normalization",
    "darboux_coordinates",
    "hw_pt_rows",
    "casimir_check",
    "canonical_form",
]


@dataclass(frozen=True)
class PTBracketMatrix:
    """``{lambda_j, phi_k}`` for ``j`` in ``rows`` and ``k`` in ``cols``.

    The ``lambda lambda`` and ``phi phi`` blocks vanish identically; the flag
    records that structural fact.
    """

    rows: tuple
    cols: tuple
    entries: tuple
    diagonal_blocks_zero: bool = True

    def __getitem__(self, key) -> Fraction:
        j, k = key
        return self.entries[self.rows.index(j)][self.cols.index(k)]

    def as_lists(self) -> list:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class DarbouxChange:
    """Triangular normalization data.

    Attributes
    ----------
    B : matrix ``B_{jk} = {lambda_{j^-}, phi_k}``
    X : diagonal ``d_{|i_j|}``
    Y : ``X B``, upper triangular unimodular with nonnegative entries
    C_phi : ``Y^{-1}``; new angles are ``upsilon = phi C_phi`` (row vectors)
    minus : ``j^-`` for each ``j``
    """

    B: tuple
    X: tuple
    Y: tuple
    C_phi: tuple
    minus: tuple


def _require_initial(seed: Seed) -> None:
    if seed.history:
        raise ChartUnsupported("bracket formulas are implemented for initial seeds only")


def c_coefficients(seed: Seed) -> tuple:
    """Imaginary parts of ``c_{z_i, z_j}`` and ``c_{z_i, zbar_j}``.

    Both matrices are indexed by ``seed.index`` in order.
    """
    _require_initial(seed)
    datum = seed.datum
    n = len(seed.index)
    diff = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            (u1, u2), (v1, v2) = seed.degrees[a], seed.degrees[b]
            diff[a][b] = bilinear_weights(datum, u1, v1) - bilinear_weights(datum, u2, v2)
    czz = [[Fraction(0)] * n for _ in range(n)]
    czb = [[diff[a][b] / 2 for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            czz[a][b] = -diff[a][b] / 2
            czz[b][a] = -czz[a][b]
    return czz, czb


def pt_bracket_matrix(seed: Seed) -> PTBracketMatrix:
    """``{lambda_j, phi_k} = Im c_{z_j,z_k} - Im c_{z_j,zbar_k}``."""
    czz, czb = c_coefficients(seed)
    cols = tuple(k for k in seed.index if k > 0)
    entries = []
    for a, j in enumerate(seed.index):
        entries.append(tuple(czz[a][seed.pos(k)] - czb[a][seed.pos(k)] for k in cols))
    return PTBracketMatrix(tuple(seed.index), cols, tuple(entries))


def _node(word: Sequence[int], j: int) -> int:
    return -j if j < 0 else word[j - 1]


def special_chart_brackets(datum: CartanDatum, word: Sequence[int]) -> PTBracketMatrix:
    """Closed form along the word: ``(w_{i_j}, w_{i_k}) - (w_{i_j}, s_{i_{j+1}}...s_{i_k} w_{i_k})``.

    The reflection product runs over word positions ``max(j, 0) + 1 .. k``;
    entries with ``j >= k`` vanish.
    """
    word = tuple(word)
    r, m = datum.rank, len(word)
    rows = tuple(range(-r, 0)) + tuple(range(1, m + 1))
    cols = tuple(range(1, m + 1))
    entries = []
    for j in rows:
        wj = _fund(datum, _node(word, j))
        row = []
        for k in cols:
            if j >= k:
                row.append(Fraction(0))
                continue
            wk = _fund(datum, _node(word, k))
            moved = weyl_act(datum, word[max(j, 0):k], wk)
            row.append(bilinear_weights(datum, wj, wk) - bilinear_weights(datum, wj, moved))
        entries.append(tuple(row))
    return PTBracketMatrix(rows, cols, tuple(entries))


def _fund(datum: CartanDatum, i: int) -> tuple:
    return tuple(int(t == i - 1) for t in range(datum.rank))


def _minus(word: Sequence[int], j: int) -> int:
    node = word[j - 1]
    for k in range(j - 1, 0, -1):
        if word[k - 1] == node:
            return k
    return -node


def triangular_normalization(datum: CartanDatum, word: Sequence[int], brackets: PTBracketMatrix | None = None) -> DarbouxChange:
    """Factor ``B = X^{-1} Y`` and build ``C_phi = Y^{-1}``.

    Raises ``AssertionError`` if ``Y`` fails to be upper triangular,
    unimodular and nonnegative: that would signal an inconsistency between
    the bracket formula and the implementation.
    """
    word = tuple(word)
    m = len(word)
    p = brackets or special_chart_brackets(datum, word)
    minus = tuple(_minus(word, j) for j in range(1, m + 1))
    b = [[p[minus[j], k] for k in range(1, m + 1)] for j in range(m)]
    x = [datum.symmetrizer[word[j] - 1] for j in range(m)]
    y = [[x[j] * b[j][k] for k in range(m)] for j in range(m)]
    assert linalg.is_integral(y), "Y is not integral"
    y = linalg.to_int(y)
    assert all(y[j][k] == 0 for j in range(m) for k in range(j)), "Y is not upper triangular"
    assert all(y[j][j] == 1 for j in range(m)), "Y is not unipotent"
    assert all(v >= 0 for row in y for v in row), "Y has a negative entry"
    c = linalg.unimodular_inverse(y)
    return DarbouxChange(
        tuple(map(tuple, b)), tuple(x), tuple(map(tuple, y)), tuple(map(tuple, c)), minus
    )


def hw_pt_rows(datum: CartanDatum, word: Sequence[int]) -> list:
    """Rows expressing ``<omega_i, hw^PT>`` in the ``lambda`` coordinates.

    In the initial cluster chart ``<omega_i, hw^t> = -lambda_{last(i*)}``
    with ``last(i)`` the last occurrence of ``i`` in the word.
    """
    word = tuple(word)
    r, m = datum.rank, len(word)
    index = list(range(-r, 0)) + list(range(1, m + 1))
    out = []
    for i in range(1, r + 1):
        node = star(datum, i)
        last = max(k for k in range(1, m + 1) if word[k - 1] == node)
        out.append([-1 if q == last else 0 for q in index])
    return out


def darboux_coordinates(seed: Seed) -> dict:
    """Linear change to canonical form.

    Returns
    -------
    dict
        ``T`` (rows: ``x_{-r}..x_{-1}, x_1..x_m`` as combinations of the
        ``lambda``), ``C_phi`` (``upsilon = phi C_phi``), the resulting
        bracket matrix ``{x, upsilon}`` and the full antisymmetric matrix in
        the order ``(x, upsilon)``.
    """
    _require_initial(seed)
    datum, word = seed.datum, seed.word
    m = len(word)
    p = pt_bracket_matrix(seed)
    norm = triangular_normalization(datum, word, p)
    index = list(seed.index)
    t = [[Fraction(v) for v in row] for row in hw_pt_rows(datum, word)]
    for j in range(1, m + 1):
        row = [Fraction(0)] * len(index)
        row[index.index(norm.minus[j - 1])] = Fraction(norm.X[j - 1])
        t.append(row)
    pm = [list(row) for row in p.entries]
    xu = linalg.matmul(linalg.matmul(t, pm), [list(row) for row in norm.C_phi])
    n = len(index) + m
    full = [[Fraction(0)] * n for _ in range(n)]
    for a in range(len(index)):
        for b in range(m):
            full[a][len(index) + b] = Fraction(xu[a][b])
            full[len(index) + b][a] = -Fraction(xu[a][b])
    return {"T": t, "C_phi": norm.C_phi, "x_upsilon": xu, "full": full, "normalization": norm}


def canonical_form(r: int, m: int) -> list:
    """``[[0, E], [-E^T, 0]]`` with ``E = [0_{r x m}; I_m]``."""
    n = r + 2 * m
    out = [[0] * n for _ in range(n)]
    for j in range(m):
        out[r + j][r + m + j] = 1
        out[r + m + j][r + j] = -1
    return out


def casimir_check(seed: Seed) -> bool:
    """The ``hw^PT`` components bracket to zero with every angle."""
    p = pt_bracket_matrix(seed)
    for row in hw_pt_rows(seed.datum, seed.word):
        for k in p.cols:
            if sum(c * p[j, k] for c, j in zip(row, p.rows)) != 0:
                return False
    return True
