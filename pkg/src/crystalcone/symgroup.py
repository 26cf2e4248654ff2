"""Exact matrix group calculus for the double Bruhat cell ``G^{w0,e}``.

Group elements live in a faithful representation (the *carrier*) whose
matrices have :class:`~crystalcone.laurent.RationalFunction` entries.  On top
of the basic operations (one-parameter subgroups, lifts of Weyl elements,
Gaussian decomposition, generalized minors, the twist) this module builds
explicit parametrizations of the cell:

``factorization``
    ``h(a) y_{i_1}(t_1) ... y_{i_m}(t_m)``, variables ``(a_1..a_r, t_1..t_m)``.
``cluster``
    the point whose initial cluster variables ``Delta_k`` equal the chart
    variables ``z_{-r}..z_{-1}, z_1..z_m``.
``twisted``
    the twist of the cluster chart.
``reduced``
    ``h(b) xbar(zbar)`` with ``b_i = h^{omega_i}`` and ``xbar`` in the reduced
    cell (all ``Delta_{w0 omega_i, omega_i} = 1``).
``twisted_reduced``
    the twist of the reduced chart.

The cluster chart is obtained without solving any equations: for the
factorization ``F`` along the *reversed* word, the twisted minors
``Delta_k(zeta(F(a, t)))`` of the seed are Laurent monomials in ``(a, t)``
with a unimodular exponent matrix.  Inverting that monomial map and twisting
back gives the chart with Laurent polynomial entries.  Every chart is
self-checked on creation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .cartan import (
    CartanDatum,
    check_reduced,
    longest_word,
    reduced_word,
    star,
    weyl_matrix,
)
from .errors import ChartUnsupported, NotDecomposable, NotLaurent, PositivityViolation, UnsupportedType
from .laurent import LaurentPoly, RationalFunction, as_rational_function

__all__ = [
    "RepCarrier",
    "rep_carrier",
    "elem_x",
    "elem_y",
    "lift_sbar",
    "gauss_decompose",
    "generalized_minor",
    "minor_of",
    "factorization_point",
    "twist",
    "torus_element",
    "Chart",
    "build_chart",
    "seed_minor_data",
    "bk_potential_in_chart",
    "string_potential_in_chart",
    "potential_pair",
    "mat_mul",
    "mat_eq",
    "evaluate_matrix",
    "CHART_KINDS",
    "bk_difference_terms",
    "mutated_chart",
    "reduced_index_set",
]

CHART_KINDS = ("factorization", "cluster", "twisted", "reduced", "twisted_reduced")


# ---------------------------------------------------------------------------
# carriers


@dataclass(frozen=True)
class RepCarrier:
    """Faithful representation used to realize group elements as matrices.

    Attributes
    ----------
    datum : CartanDatum
    e, f, h : tuple of integer matrices
        Chevalley generators, ``f_i`` is the transpose of ``e_i``.
    dim : int
    minor_sizes : tuple of int
        ``Delta_{omega_i}`` is the leading ``minor_sizes[i-1]`` principal minor.
    """

    datum: CartanDatum
    e: tuple = field(repr=False)
    f: tuple = field(repr=False)
    h: tuple = field(repr=False)
    dim: int = 0
    minor_sizes: tuple = ()

    def basis_weight(self, k: int) -> tuple:
        return tuple(self.h[j][k][k] for j in range(self.datum.rank))


def _E(n: int, i: int, j: int) -> list:
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def _madd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _bracket(a, b):
    ab = linalg.matmul(a, b)
    ba = linalg.matmul(b, a)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(ab, ba)]


def _type_a_generators(n: int):
    dim = n + 1
    return [_E(dim, i, i + 1) for i in range(n)], dim


def _type_c_generators(n: int):
    dim = 2 * n
    es = []
    for i in range(n - 1):
        es.append(_madd(_E(dim, i, i + 1), _E(dim, 2 * n - i - 2, 2 * n - i - 1)))
    es.append(_E(dim, n - 1, n))
    return es, dim


@lru_cache(maxsize=None)
def rep_carrier(datum: CartanDatum) -> RepCarrier:
    """Faithful carrier: defining representations of ``SL_n`` and ``Sp_{2n}``.

    ``B2`` uses the four dimensional spin representation (the ``Sp_4`` model
    with the two nodes exchanged).  Other types raise :class:`UnsupportedType`.
    """
    fam, n = datum.family, datum.rank
    if fam == "A":
        es, dim = _type_a_generators(n)
    elif fam == "C":
        es, dim = _type_c_generators(n)
    elif fam == "B" and n == 2:
        es, dim = _type_c_generators(2)
        es = [es[1], es[0]]
    else:
        raise UnsupportedType(f"no carrier bundled for {datum.name}")
    fs = [linalg.transpose(e) for e in es]
    hs = [_bracket(e, f) for e, f in zip(es, fs)]
    carrier = RepCarrier(
        datum,
        tuple(tuple(map(tuple, m)) for m in es),
        tuple(tuple(map(tuple, m)) for m in fs),
        tuple(tuple(map(tuple, m)) for m in hs),
        dim,
        (),
    )
    _check_relations(carrier)
    sizes = _minor_sizes(carrier)
    return RepCarrier(datum, carrier.e, carrier.f, carrier.h, dim, sizes)


def _check_relations(c: RepCarrier) -> None:
    a = c.datum.cartan
    r = c.datum.rank
    for i in range(r):
        for j in range(r):
            ef = _bracket(c.e[i], c.f[j])
            want = c.h[i] if i == j else [[0] * c.dim for _ in range(c.dim)]
            assert [list(x) for x in ef] == [list(x) for x in want], "[e_i, f_j] relation fails"
            he = _bracket(c.h[i], c.e[j])
            assert he == [[a[i][j] * x for x in row] for row in c.e[j]], "[h_i, e_j] relation fails"
            hf = _bracket(c.h[i], c.f[j])
            assert hf == [[-a[i][j] * x for x in row] for row in c.f[j]], "[h_i, f_j] relation fails"


def _minor_sizes(c: RepCarrier) -> tuple:
    r = c.datum.rank
    sizes = []
    for i in range(r):
        target = tuple(int(k == i) for k in range(r))
        acc = [0] * r
        for k in range(c.dim):
            acc = [x + y for x, y in zip(acc, c.basis_weight(k))]
            if tuple(acc) == target:
                sizes.append(k + 1)
                break
        else:
            raise UnsupportedType(f"carrier does not realize omega_{i + 1} by a leading minor")
    return tuple(sizes)


# ---------------------------------------------------------------------------
# symbolic matrices


def _as_rf(x, nvars: int) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction(x)
    return RationalFunction(LaurentPoly.const(nvars, x))


def _lift_matrix(m, nvars: int) -> list:
    return [[_as_rf(x, nvars) for x in row] for row in m]


def _nvars_of(m) -> int:
    for row in m:
        for x in row:
            if isinstance(x, (RationalFunction, LaurentPoly)):
                return x.nvars
    return 0


def mat_mul(a, b) -> list:
    """Product of matrices whose entries are numbers or rational functions."""
    nv = max(_nvars_of(a), _nvars_of(b))
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if _is_zero(x) or _is_zero(y):
                    continue
                term = _times(x, y, nv)
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else RationalFunction(LaurentPoly.zero(nv)))
        out.append(row)
    return out


def _is_zero(x) -> bool:
    if isinstance(x, (RationalFunction, LaurentPoly)):
        return x.is_zero()
    return x == 0


def _times(x, y, nv):
    if isinstance(x, (int, Fraction)):
        if isinstance(y, (int, Fraction)):
            return _as_rf(x * y, nv)
        return _as_rf(y, nv) * x
    if isinstance(y, (int, Fraction)):
        return _as_rf(x, nv) * y
    return _as_rf(x, nv) * _as_rf(y, nv)


def mat_eq(a, b) -> bool:
    nv = max(_nvars_of(a), _nvars_of(b))
    return all(
        _as_rf(x, nv) == _as_rf(y, nv) for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def _identity(n: int, nv: int) -> list:
    return [[_as_rf(int(i == j), nv) for j in range(n)] for i in range(n)]


def _exp_nilpotent(gen, value, nv: int) -> list:
    """``exp(value * gen)`` for a nilpotent integer matrix ``gen``."""
    n = len(gen)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    power = [list(r) for r in gen]
    k = 1
    fact = 1
    coeffs = []
    while any(any(x for x in row) for row in power):
        fact *= k
        coeffs.append((k, [[Fraction(x, fact) for x in row] for row in power]))
        power = linalg.matmul(power, gen)
        k += 1
    v = _as_rf(value, nv) if not isinstance(value, (int, Fraction)) else value
    res = [[_as_rf(out[i][j], nv) for j in range(n)] for i in range(n)]
    for k, mat in coeffs:
        vk = v**k
        for i in range(n):
            for j in range(n):
                if mat[i][j]:
                    res[i][j] = res[i][j] + _as_rf(vk, nv) * mat[i][j]
    return res


def elem_x(carrier: RepCarrier, i: int, value, nvars: int | None = None) -> list:
    """``x_i(value) = exp(value e_i)``."""
    nv = value.nvars if isinstance(value, (LaurentPoly, RationalFunction)) else (nvars or 0)
    return _exp_nilpotent(carrier.e[i - 1], value, nv)


def elem_y(carrier: RepCarrier, i: int, var_index, nvars: int | None = None) -> list:
    """``y_i(t) = exp(t f_i)``.

    ``var_index`` may be an integer variable index (with ``nvars`` given), in
    which case ``t`` is that variable, or an explicit value.
    """
    if isinstance(var_index, int) and nvars is not None:
        value = LaurentPoly.var(nvars, var_index)
    else:
        value = var_index
    nv = value.nvars if isinstance(value, (LaurentPoly, RationalFunction)) else (nvars or 0)
    return _exp_nilpotent(carrier.f[i - 1], value, nv)


@lru_cache(maxsize=None)
def _sbar_int(carrier: RepCarrier, word: tuple) -> tuple:
    n = carrier.dim
    out = linalg.identity(n)
    for i in word:
        e = carrier.e[i - 1]
        f = carrier.f[i - 1]
        xm = _int_exp(e, -1)
        ym = _int_exp(f, 1)
        s = linalg.matmul(linalg.matmul(xm, ym), xm)
        out = linalg.matmul(out, s)
    return tuple(tuple(r) for r in out)


def _int_exp(gen, t) -> list:
    n = len(gen)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    power = [list(r) for r in gen]
    k = 1
    fact = 1
    while any(any(x for x in row) for row in power):
        fact *= k
        out = [[a + Fraction(t**k * b, fact) for a, b in zip(r, s)] for r, s in zip(out, power)]
        power = linalg.matmul(power, gen)
        k += 1
    return linalg.to_int(out)


def lift_sbar(carrier: RepCarrier, word: Sequence[int]) -> list:
    """Product of the lifts ``sbar_i = x_i(-1) y_i(1) x_i(-1)`` along ``word``."""
    return [list(r) for r in _sbar_int(carrier, tuple(word))]


@lru_cache(maxsize=None)
def _sbar_inverse(carrier: RepCarrier, word: tuple) -> tuple:
    return tuple(tuple(r) for r in linalg.unimodular_inverse(_sbar_int(carrier, word)))


# ---------------------------------------------------------------------------
# Gaussian decomposition, minors, twist


def gauss_decompose(m) -> tuple:
    """Exact ``m = lower * diag * upper`` with unipotent triangular factors.

    Returns
    -------
    (lower, diagonal, upper)
        ``diagonal`` is the list of pivots.

    Raises
    ------
    NotDecomposable
        If a leading principal minor vanishes identically.
    """
    nv = _nvars_of(m)
    n = len(m)
    a = [[_as_rf(x, nv) for x in row] for row in m]
    lower = _identity(n, nv)
    for k in range(n):
        p = a[k][k]
        if p.is_zero():
            raise NotDecomposable(f"leading principal minor of size {k + 1} vanishes")
        pinv = p.inverse()
        for i in range(k + 1, n):
            if a[i][k].is_zero():
                continue
            l = a[i][k] * pinv
            lower[i][k] = l
            a[i] = [x - l * y if j >= k else x for j, (x, y) in enumerate(zip(a[i], a[k]))]
            a[i][k] = RationalFunction(LaurentPoly.zero(nv))
    diag = [a[k][k] for k in range(n)]
    upper = [
        [
            _as_rf(int(i == j), nv) if j <= i else a[i][j] * diag[i].inverse()
            for j in range(n)
        ]
        for i in range(n)
    ]
    return lower, diag, upper


def _det(m) -> RationalFunction:
    n = len(m)
    nv = _nvars_of(m)
    if n == 0:
        return _as_rf(1, nv)
    if n == 1:
        return _as_rf(m[0][0], nv)
    if n == 2:
        return _times(m[0][0], m[1][1], nv) - _times(m[0][1], m[1][0], nv)
    total = None
    for j in range(n):
        if _is_zero(m[0][j]):
            continue
        sub = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = _times(m[0][j], _det(sub), nv)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else _as_rf(0, nv)


def minor_of(m, rows: Sequence[int], cols: Sequence[int]) -> RationalFunction:
    return _det([[m[i][j] for j in cols] for i in rows])


def generalized_minor(carrier: RepCarrier, u: Sequence[int], v: Sequence[int], i: int, m) -> RationalFunction:
    """``Delta_{u omega_i, v omega_i}(m)``: leading minor of ``ubar^{-1} m vbar``.

    ``u`` and ``v`` must be reduced words.
    """
    k = carrier.minor_sizes[i - 1]
    uinv = _sbar_inverse(carrier, tuple(u))
    vbar = _sbar_int(carrier, tuple(v))
    rows = [uinv[a] for a in range(k)]
    left = mat_mul(rows, m)
    prod = mat_mul(left, [[vbar[a][b] for b in range(k)] for a in range(len(vbar))])
    return _det(prod)


def _theta_sign(n: int) -> list:
    return [(-1) ** k for k in range(n)]


def twist(carrier: RepCarrier, m) -> list:
    """``zeta(x) = theta([w0bar^{-1} x]_{>=0})``.

    ``theta(g) = S (g^T)^{-1} S`` with ``S = diag(1, -1, 1, ...)``; it sends
    ``x_i(t)`` to ``y_i(t)`` and ``h`` to ``h^{-1}`` on every bundled carrier.
    """
    nv = _nvars_of(m)
    n = carrier.dim
    w0 = longest_word(carrier.datum)
    winv = [list(r) for r in _sbar_inverse(carrier, w0)]
    y = mat_mul(winv, m)
    _, diag, upper = gauss_decompose(y)
    # (diag upper)^{-1} = upper^{-1} diag^{-1}
    uinv = _unipotent_upper_inverse(upper, nv)
    dinv = [d.inverse() for d in diag]
    ginv = [[uinv[i][j] * dinv[j] for j in range(n)] for i in range(n)]
    s = _theta_sign(n)
    return [[ginv[j][i] * (s[i] * s[j]) for j in range(n)] for i in range(n)]


def _unipotent_upper_inverse(u, nv: int) -> list:
    n = len(u)
    inv = _identity(n, nv)
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = None
            for k in range(i + 1, j + 1):
                if u[i][k].is_zero() or inv[k][j].is_zero():
                    continue
                t = u[i][k] * inv[k][j]
                acc = t if acc is None else acc + t
            inv[i][j] = -acc if acc is not None else _as_rf(0, nv)
    return inv


def torus_element(carrier: RepCarrier, values: Sequence, nvars: int | None = None) -> list:
    """Diagonal matrix of ``h`` with ``h^{omega_i} = values[i]``."""
    nv = nvars if nvars is not None else _nvars_of([list(values)])
    n = carrier.dim
    r = carrier.datum.rank
    out = [[_as_rf(0, nv) for _ in range(n)] for _ in range(n)]
    for k in range(n):
        wt = carrier.basis_weight(k)
        acc = _as_rf(1, nv)
        for j in range(r):
            if wt[j]:
                acc = acc * (_as_rf(values[j], nv) ** wt[j])
        out[k][k] = acc
    return out


def factorization_point(carrier: RepCarrier, word: Sequence[int], include_H: bool = True) -> list:
    """``h(a) y_{i_1}(t_1) ... y_{i_m}(t_m)`` with the torus factor on the left.

    Variables are ordered ``(a_1..a_r, t_1..t_m)`` (or just the ``t``).
    """
    datum = carrier.datum
    word = check_reduced(datum, word, longest=True)
    r = datum.rank if include_H else 0
    nv = r + len(word)
    if include_H:
        m = torus_element(carrier, [LaurentPoly.var(nv, j) for j in range(r)], nv)
    else:
        m = _identity(carrier.dim, nv)
    for k, i in enumerate(word):
        m = mat_mul(m, elem_y(carrier, i, r + k, nv))
    return m


def evaluate_matrix(m, values) -> np.ndarray:
    """Numeric evaluation of a symbolic matrix at a point."""
    return np.array(
        [[complex(_as_rf(x, len(values)).evaluate(values)) for x in row] for row in m], dtype=complex
    )


# ---------------------------------------------------------------------------
# seeds' minors and charts


@lru_cache(maxsize=None)
def seed_minor_data(datum: CartanDatum, word: tuple) -> tuple:
    """Index set and minor data of the initial seed of a word for ``w0``.

    Returns
    -------
    tuple of (k, u_word, node)
        One entry per index ``k`` in ``[-r..-1] + [1..m]``; the label is
        ``Delta_{u omega_node, omega_node}``.
    """
    r = datum.rank
    out = [(-i, (), i) for i in range(r, 0, -1)]
    for k in range(1, len(word) + 1):
        out.append((k, tuple(word[:k]), word[k - 1]))
    return tuple(out)


@dataclass
class Chart:
    """An explicit toric chart of ``G^{w0,e}`` (or of its reduced part).

    Attributes
    ----------
    kind : str
        One of :data:`CHART_KINDS`, possibly suffixed with ``"_L"`` for charts
        of the reduced cell only.
    names : list of str
        Variable names in order.
    matrix : list
        Symbolic group element in the carrier.
    torus : int
        Number of leading variables that parametrize the torus factor (reduced
        kinds) or zero.
    indices : list
        Cluster index of each non-torus variable (``None`` for factorization).
    """

    carrier: RepCarrier
    word: tuple
    kind: str
    names: list
    matrix: list
    torus: int = 0
    indices: list = field(default_factory=list)
    history: tuple = ()

    @property
    def datum(self) -> CartanDatum:
        return self.carrier.datum

    @property
    def nvars(self) -> int:
        return len(self.names)

    def minor(self, u: Sequence[int], v: Sequence[int], i: int) -> RationalFunction:
        return generalized_minor(self.carrier, u, v, i, self.matrix)

    def laurent_minor(self, u, v, i) -> LaurentPoly:
        return self.minor(u, v, i).as_laurent()


def _w0_si(datum: CartanDatum, i: int, left: bool = False) -> tuple:
    w0 = weyl_matrix(datum, longest_word(datum))
    si = weyl_matrix(datum, (i,))
    return reduced_word(datum, linalg.matmul(si, w0) if left else linalg.matmul(w0, si))


def _monomial_exponent(p: RationalFunction, what: str):
    lp = p.as_laurent()
    if not lp.is_monomial():
        raise ChartUnsupported(f"{what} is not a Laurent monomial in this chart")
    return lp.monomial_data()


@lru_cache(maxsize=None)
def _cluster_chart_data(datum: CartanDatum, word: tuple):
    """Monomial map from cluster variables to factorization parameters."""
    carrier = rep_carrier(datum)
    f = factorization_point(carrier, tuple(reversed(word)), include_H=True)
    zf = twist(carrier, f)
    data = seed_minor_data(datum, word)
    rows = []
    coeffs = []
    for _, u, i in data:
        e, c = _monomial_exponent(generalized_minor(carrier, u, (), i, zf), "twisted initial minor")
        if c <= 0:
            raise PositivityViolation("twisted minor with nonpositive coefficient")
        rows.append(list(e))
        coeffs.append(Fraction(c))
    inv = linalg.unimodular_inverse(rows)
    n = len(rows)
    images = []
    for j in range(n):
        c = Fraction(1)
        for k in range(n):
            if inv[j][k]:
                c /= coeffs[k] ** inv[j][k]
        images.append(LaurentPoly.monomial(n, inv[j], c))
    return f, zf, images


def _subst(m, images) -> list:
    out = []
    for row in m:
        new = []
        for x in row:
            x = _as_rf(x, len(images))
            lp = x.as_laurent()
            new.append(RationalFunction(lp.substitute(images)))
        out.append(new)
    return out


def _cluster_names(data) -> tuple:
    names = [f"z{k}" if k > 0 else f"z_{-k}" for k, _, _ in data]
    return names, [k for k, _, _ in data]


@lru_cache(maxsize=None)
def _build_chart_cached(datum: CartanDatum, word: tuple, kind: str) -> Chart:
    carrier = rep_carrier(datum)
    r, m = datum.rank, len(word)
    data = seed_minor_data(datum, word)
    if kind == "factorization":
        mat = factorization_point(carrier, word, include_H=True)
        names = [f"a{j + 1}" for j in range(r)] + [f"t{k + 1}" for k in range(m)]
        return Chart(carrier, word, kind, names, mat, torus=r, indices=[None] * m)
    f, zf, images = _cluster_chart_data(datum, word)
    names, idx = _cluster_names(data)
    if kind == "cluster":
        mat = _subst(zf, images)
        chart = Chart(carrier, word, kind, names, mat, 0, idx)
        for pos, (_, u, i) in enumerate(data):
            got = chart.minor(u, (), i)
            assert got == RationalFunction(LaurentPoly.var(r + m, pos)), "cluster chart self-check failed"
        return chart
    if kind == "twisted":
        return Chart(carrier, word, kind, names, _subst(f, images), 0, idx)
    if kind in ("reduced", "twisted_reduced", "reduced_L", "twisted_reduced_L"):
        return _reduced_chart(datum, word, kind)
    raise ChartUnsupported(f"unknown chart kind {kind!r}")


def reduced_index_set(datum: CartanDatum, word: tuple) -> list:
    """``L = [-r..-1] + exchangeable indices`` in seed order."""
    r, m = datum.rank, len(word)
    last = {}
    for k, i in enumerate(word, start=1):
        last[i] = k
    return [-i for i in range(r, 0, -1)] + [k for k in range(1, m + 1) if last[word[k - 1]] != k]


def _reduced_chart(datum: CartanDatum, word: tuple, kind: str) -> Chart:
    carrier = rep_carrier(datum)
    r, m = datum.rank, len(word)
    cl = _build_chart_cached(datum, word, "cluster")
    lset = reduced_index_set(datum, word)
    pos = {k: p for p, k in enumerate(cl.indices)}
    on_l = kind.endswith("_L")
    ntor = 0 if on_l else r
    nv = ntor + len(lset)
    # xbar(zbar): cluster chart with the frozen Delta_{w0 omega_i, omega_i} set to one
    images = [LaurentPoly.one(nv) for _ in range(r + m)]
    for q, k in enumerate(lset):
        images[pos[k]] = LaurentPoly.var(nv, ntor + q)
    xbar = _subst(cl.matrix, images)
    if on_l and kind.startswith("twisted"):
        # on the reduced cell the twisted chart forces h^{omega_i} = 1 / zbar_{-i}
        b = [LaurentPoly.var(nv, lset.index(-i)) ** -1 for i in range(1, r + 1)]
        mat = twist(carrier, mat_mul(torus_element(carrier, b, nv), xbar))
    elif on_l:
        mat = xbar
    else:
        b = [LaurentPoly.var(nv, j) for j in range(r)]
        mat = mat_mul(torus_element(carrier, b, nv), xbar)
        if kind.startswith("twisted"):
            mat = twist(carrier, mat)
    names = ([f"b{j + 1}" for j in range(ntor)]) + [
        f"zbar{k}" if k > 0 else f"zbar_{-k}" for k in lset
    ]
    return Chart(carrier, word, kind, names, mat, ntor, lset)


def build_chart(datum: CartanDatum, word: Sequence[int] | None = None, kind: str = "cluster") -> Chart:
    """Construct (and cache) a chart of the given kind.

    Kinds ending in ``"_L"`` parametrize the reduced cell only (``m``
    variables); for ``"twisted_reduced_L"`` this is the chart whose potential
    tropicalizes to the string cone.
    """
    word = longest_word(datum) if word is None else check_reduced(datum, word, longest=True)
    return _build_chart_cached(datum, tuple(word), kind)


# ---------------------------------------------------------------------------
# potentials


def _require_positive(p: LaurentPoly, what: str) -> LaurentPoly:
    if not p.is_positive():
        raise PositivityViolation(f"{what} has a nonpositive coefficient")
    return p


def potential_pair(p: LaurentPoly) -> tuple:
    """Split a Laurent polynomial as ``(numerator, monomial denominator)``.

    The numerator has nonnegative exponents and no monomial factor.
    """
    lo = p.min_exponent()
    num = p.shift([-x for x in lo])
    den = LaurentPoly.monomial(p.nvars, [-x for x in lo])
    return num, den


def bk_potential_in_chart(chart: Chart) -> LaurentPoly:
    """``Phi_BK = sum_i (Delta_{w0 w_i, s_i w_i} + Delta_{w0 s_i w_i, w_i}) / Delta_{w0 w_i, w_i}``.

    Returned as a Laurent polynomial in the chart variables; every
    coefficient is checked to be positive.
    """
    datum = chart.datum
    if chart.kind.endswith("_L"):
        raise ChartUnsupported("the BK potential lives on the full cell")
    w0 = longest_word(datum)
    total = RationalFunction(LaurentPoly.zero(chart.nvars))
    for i in range(1, datum.rank + 1):
        den = chart.minor(w0, (), i)
        a = chart.minor(w0, (i,), i)
        b = chart.minor(_w0_si(datum, i), (), i)
        total = total + (a + b) / den
    return _require_positive(total.as_laurent(), "Phi_BK")


def string_potential_in_chart(chart: Chart) -> LaurentPoly:
    """``Phi_L = sum_i Delta_{w0 w_i, s_i w_i}`` on a chart of the reduced cell."""
    datum = chart.datum
    if not chart.kind.endswith("_L"):
        raise ChartUnsupported("Phi_L is defined on charts of the reduced cell")
    w0 = longest_word(datum)
    total = RationalFunction(LaurentPoly.zero(chart.nvars))
    for i in range(1, datum.rank + 1):
        total = total + chart.minor(w0, (i,), i)
    return _require_positive(total.as_laurent(), "Phi_L")


def bk_difference_terms(chart: Chart) -> LaurentPoly:
    """``sum_i h^{-w0 alpha_i} Delta_{w0 s_i w_i, w_i}(xbar)`` in a reduced chart."""
    datum = chart.datum
    if chart.kind != "reduced":
        raise ChartUnsupported("defined for the reduced chart")
    r = datum.rank
    nv = chart.nvars
    xbar_chart = _build_chart_cached(datum, chart.word, "reduced_L")
    total = LaurentPoly.zero(nv)
    for i in range(1, r + 1):
        j = star(datum, i)
        alpha = [datum.cartan[k][j - 1] for k in range(r)]
        mono = LaurentPoly.monomial(nv, alpha + [0] * (nv - r))
        d = xbar_chart.minor(_w0_si(datum, i), (), i).as_laurent()
        d = LaurentPoly(nv, {(0,) * r + e: c for e, c in d.terms.items()})
        total = total + mono * d
    return total


def mutated_chart(chart: Chart, steps: Sequence[int]) -> Chart:
    """Chart of the seed reached from ``chart`` by mutating at ``steps``.

    Works for cluster and reduced charts (indices tracked in
    ``chart.indices``).  The old variable is replaced through the exchange
    relation ``z_k = (P + N) / z'_k`` and every entry is reduced back to a
    Laurent polynomial; a failure raises :class:`NotLaurent`.
    """
    from .cluster import mutate, reduced_seed, seed_from_word

    if chart.kind not in ("cluster", "reduced", "reduced_L"):
        raise ChartUnsupported(f"mutation of {chart.kind!r} charts is not tracked")
    seed = seed_from_word(chart.datum, chart.word)
    for k in chart.history:
        seed = mutate(seed, k)
    mat = chart.matrix
    nv = chart.nvars
    off = chart.torus
    for k in steps:
        red = reduced_seed(seed) if chart.kind != "cluster" else seed
        if k not in red.mutable:
            raise ChartUnsupported(f"index {k} is frozen")
        p = red.pos(k)
        col = [row[p] for row in red.matrix]
        pos = LaurentPoly.one(nv)
        neg = LaurentPoly.one(nv)
        for j, c in enumerate(col):
            v = LaurentPoly.var(nv, off + chart.indices.index(red.index[j]))
            if c > 0:
                pos = pos * v ** c
            elif c < 0:
                neg = neg * v ** (-c)
        q = off + chart.indices.index(k)
        images = [RationalFunction(LaurentPoly.var(nv, j)) for j in range(nv)]
        images[q] = RationalFunction(pos + neg, LaurentPoly.var(nv, q))
        new = []
        for row in mat:
            out = []
            for x in row:
                x = _as_rf(x, nv)
                val = x.num.substitute(images) / x.den.substitute(images)
                try:
                    out.append(RationalFunction(as_rational_function(val).as_laurent()))
                except NotLaurent as exc:
                    raise NotLaurent(f"chart entry not Laurent after mutation at {k}") from exc
            new.append(out)
        mat = new
        seed = mutate(seed, k)
    return Chart(chart.carrier, chart.word, chart.kind, list(chart.names), mat, chart.torus,
                 list(chart.indices), chart.history + tuple(steps))
