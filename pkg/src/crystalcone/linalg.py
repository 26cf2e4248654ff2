"""Small exact linear algebra over the rationals and the integers.

Matrices are lists of lists of ``int`` or ``Fraction``.  Everything here is
meant for the tiny matrices (at most a dozen rows) that appear in root data,
exchange matrices and chart changes, so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = [
    "Matrix",
    "identity",
    "zeros",
    "transpose",
    "matmul",
    "matvec",
    "det",
    "inverse",
    "rank",
    "solve",
    "is_integral",
    "to_int",
    "smith_diagonal",
    "unimodular_inverse",
    "column_hermite",
    "integer_solutions",
]

Matrix = list


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[_norm(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [_norm(sum(x * y for x, y in zip(row, v))) for row in a]


def _echelon(a: Sequence[Sequence]):
    m = [[_frac(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    sign = 1
    pivots = []
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        for i in range(r + 1, rows):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots, sign


def det(a: Sequence[Sequence]):
    n = len(a)
    if n == 0:
        return 1
    m, pivots, sign = _echelon(a)
    if len(pivots) < n:
        return 0
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return _norm(out)


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(_echelon(a)[1])


def inverse(a: Sequence[Sequence]) -> Matrix:
    """Exact inverse; raises ``ValueError`` for singular input."""
    n = len(a)
    m = [[_frac(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [[_norm(x) for x in row[n:]] for row in m]


def solve(a: Sequence[Sequence], b: Sequence) -> list:
    """Solve ``a x = b`` for square nonsingular ``a``."""
    return matvec(inverse(a), b)


def is_integral(a) -> bool:
    if isinstance(a, (list, tuple)):
        return all(is_integral(x) for x in a)
    return _frac(a).denominator == 1


def to_int(a):
    if isinstance(a, (list, tuple)):
        return [to_int(x) for x in a]
    f = _frac(a)
    if f.denominator != 1:
        raise ValueError(f"{a} is not an integer")
    return f.numerator


def smith_diagonal(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form)."""
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, rows):
                q = m[i][t] // m[t][t]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    done = False
            for j in range(t + 1, cols):
                q = m[t][j] // m[t][t]
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    for row in m:
                        row[t], row[j] = row[j], row[t]
                    done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % m[t][t]),
                    None,
                )
                if bad is not None:
                    i, _ = bad
                    m[t] = [x + y for x, y in zip(m[t], m[i])]
                    done = False
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def unimodular_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of an integer matrix with determinant +-1, as integers."""
    if abs(det(a)) != 1:
        raise ValueError("matrix is not unimodular")
    return to_int(inverse(a))


def column_hermite(a: Sequence[Sequence[int]]) -> tuple:
    """Unimodular ``u`` with ``a u = h`` column-echelon (lower trapezoidal).

    Returns ``(h, u, pivots)`` where ``pivots[i]`` is the pivot row of column
    ``i`` for the first ``len(pivots)`` columns; remaining columns of ``h``
    vanish.
    """
    h = [list(map(int, row)) for row in a]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity(cols)

    def colop(j, k, q):  # col_j -= q col_k
        for row in h:
            row[j] -= q * row[k]
        for row in u:
            row[j] -= q * row[k]

    def swap(j, k):
        for row in h:
            row[j], row[k] = row[k], row[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    pivots = []
    c = 0
    for i in range(rows):
        if c >= cols:
            break
        while True:
            nz = [j for j in range(c, cols) if h[i][j]]
            if not nz:
                break
            k = min(nz, key=lambda j: abs(h[i][j]))
            swap(c, k)
            for j in range(c + 1, cols):
                if h[i][j]:
                    colop(j, c, h[i][j] // h[i][c])
            if all(h[i][j] == 0 for j in range(c + 1, cols)):
                break
        if h[i][c] if c < cols else 0:
            if h[i][c] < 0:
                for row in h:
                    row[c] = -row[c]
                for row in u:
                    row[c] = -row[c]
            pivots.append(i)
            c += 1
    return h, u, pivots


def integer_solutions(a: Sequence[Sequence[int]], b: Sequence) -> tuple | None:
    """Parametrize ``{x in Z^n : a x = b}`` as ``x0 + K t``.

    Returns ``(x0, K)`` with ``K`` an ``n x k`` integer matrix whose columns
    form a lattice basis of the kernel, or ``None`` if there is no integral
    solution.
    """
    n = len(a[0])
    h, u, pivots = column_hermite(a)
    r = len(pivots)
    y = [0] * n
    for c, i in enumerate(pivots):
        rest = _frac(b[i]) - sum(h[i][j] * y[j] for j in range(c))
        q = rest / h[i][c]
        if q.denominator != 1:
            return None
        y[c] = q.numerator
    for i in range(len(a)):
        if sum(h[i][j] * y[j] for j in range(r)) != _frac(b[i]):
            return None
    x0 = [sum(u[i][j] * y[j] for j in range(r)) for i in range(n)]
    kernel = [[u[i][j] for j in range(r, n)] for i in range(n)]
    return x0, kernel
