"""Seeds of the cluster structure on ``G^{w0,e}`` and their mutations.

Cluster variables are tracked as Laurent polynomials in the initial cluster.
Each exchange relation is divided out exactly; a nonzero remainder raises
:class:`~crystalcone.errors.NotLaurent`, so the Laurent phenomenon is checked
at every step rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .cartan import CartanDatum, check_reduced, dual_datum, longest_word, weyl_act
from .errors import NotLaurent, NotMutable
from .laurent import LaurentPoly

__all__ = [
    "Seed",
    "seed_from_word",
    "exchange_matrix",
    "mutate",
    "mutate_sequence",
    "dual_seed",
    "check_homogeneous",
    "is_skew_symmetrized",
    "reduced_seed",
    "exchangeable_indices",
]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Seed:
    """A labeled seed.

    Attributes
    ----------
    datum : CartanDatum
    word : tuple
        Reduced word for ``w0`` (positive letters; the double word uses the
        negative alphabet).
    index : tuple
        Ordered index set, ``(-r, ..., -1, 1, ..., m)`` or a subset of it.
    mutable : frozenset
        Exchangeable indices ``J``.
    matrix : tuple of tuples
        Exchange matrix, rows and columns in ``index`` order.
    labels : tuple of LaurentPoly
        Cluster variables as Laurent polynomials in the initial cluster.
    degrees : tuple
        ``P x P`` degree of each cluster variable as a pair of weights.
    symmetrizer : tuple
        Diagonal of the skew-symmetrizer ``D_jj = d_{|i_j|}``.
    history : tuple
        Mutation directions applied to the initial seed.
    dual : bool
        True for a Langlands dual seed.
    """

    datum: CartanDatum
    word: tuple
    index: tuple
    mutable: frozenset
    matrix: tuple = field(repr=False)
    labels: tuple = field(repr=False)
    degrees: tuple = field(repr=False)
    symmetrizer: tuple = ()
    history: tuple = ()
    dual: bool = False

    def pos(self, k: int) -> int:
        return self.index.index(k)

    def entry(self, k: int, l: int) -> int:
        return self.matrix[self.pos(k)][self.pos(l)]

    def label(self, k: int) -> LaurentPoly:
        return self.labels[self.pos(k)]

    def degree(self, k: int) -> tuple:
        return self.degrees[self.pos(k)]

    @property
    def frozen(self) -> list:
        return [k for k in self.index if k not in self.mutable]

    @property
    def is_initial(self) -> bool:
        return not self.history


def exchangeable_indices(word: Sequence[int]) -> list:
    m = len(word)
    return [k for k in range(1, m + 1) if _plus(word, k) <= m]


def _letter(word: Sequence[int], k: int) -> int:
    """Signed letter ``i_k`` of the double word: ``i_{-j} = j`` and ``i_k = -word[k]``."""
    return -k if k < 0 else -word[k - 1]


def _plus(word: Sequence[int], k: int) -> int:
    m = len(word)
    target = abs(_letter(word, k))
    for j in range(max(k, 0) + 1, m + 1):
        if abs(_letter(word, j)) == target:
            return j
    return m + 1


def exchange_matrix(datum: CartanDatum, word: Sequence[int]) -> list:
    """The matrix ``M(i)`` of the double word for ``(w0, e)``."""
    r, m = datum.rank, len(word)
    index = list(range(-r, 0)) + list(range(1, m + 1))
    a = datum.cartan
    out = []
    for k in index:
        row = []
        for l in index:
            if k == l:
                row.append(0)
                continue
            kp, lp = _plus(word, k), _plus(word, l)
            p, q = max(k, l), min(kp, lp)
            ip = _letter(word, p)
            if p == q:
                row.append(-_sign(k - l) * _sign(ip))
            elif p < q <= m:
                iq = _letter(word, q)
                if _sign(ip) * _sign(iq) * (k - l) * (kp - lp) > 0:
                    row.append(-_sign(k - l) * _sign(ip) * a[abs(_letter(word, k)) - 1][abs(_letter(word, l)) - 1])
                else:
                    row.append(0)
            else:
                row.append(0)
        out.append(row)
    return out


def seed_from_word(datum: CartanDatum, word: Sequence[int] | None = None) -> Seed:
    """Initial seed of the double word for ``(w0, e)`` built from ``word``."""
    word = longest_word(datum) if word is None else check_reduced(datum, word, longest=True)
    r, m = datum.rank, len(word)
    index = tuple(range(-r, 0)) + tuple(range(1, m + 1))
    n = len(index)
    labels = tuple(LaurentPoly.var(n, p) for p in range(n))
    degrees = []
    for k in index:
        if k < 0:
            om = tuple(int(j == -k - 1) for j in range(r))
            degrees.append((om, om))
        else:
            i = word[k - 1]
            om = tuple(int(j == i - 1) for j in range(r))
            degrees.append((weyl_act(datum, word[:k], om), om))
    sym = tuple(datum.symmetrizer[abs(_letter(word, k)) - 1] for k in index)
    return Seed(
        datum,
        tuple(word),
        index,
        frozenset(exchangeable_indices(word)),
        tuple(tuple(row) for row in exchange_matrix(datum, word)),
        labels,
        tuple(degrees),
        sym,
    )


def _add_deg(a: tuple, b: tuple, c: int = 1) -> tuple:
    return tuple(tuple(x + c * y for x, y in zip(u, v)) for u, v in zip(a, b))


def mutate(seed: Seed, k: int) -> Seed:
    """Seed mutation in direction ``k``.

    Raises
    ------
    NotMutable
        If ``k`` is frozen.
    NotLaurent
        If the new variable is not a Laurent polynomial in the initial cluster.
    """
    if k not in seed.mutable:
        raise NotMutable(f"index {k} is frozen")
    p = seed.pos(k)
    mat = seed.matrix
    n = len(seed.index)
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == p or j == p:
                row.append(-mat[i][j])
            else:
                a, b = mat[i][p], mat[p][j]
                row.append(mat[i][j] + (abs(a) * b + a * abs(b)) // 2)
        new.append(tuple(row))
    nv = seed.labels[0].nvars
    pos_mono = LaurentPoly.one(nv)
    neg_mono = LaurentPoly.one(nv)
    zero = tuple(tuple(0 for _ in w) for w in seed.degrees[0])
    pos_deg, neg_deg = zero, zero
    for j in range(n):
        c = mat[j][p]
        if c > 0:
            pos_mono = pos_mono * seed.labels[j] ** c
            pos_deg = _add_deg(pos_deg, seed.degrees[j], c)
        elif c < 0:
            neg_mono = neg_mono * seed.labels[j] ** (-c)
            neg_deg = _add_deg(neg_deg, seed.degrees[j], -c)
    if pos_deg != neg_deg:
        raise AssertionError(f"exchange relation at {k} is not homogeneous")
    q = (pos_mono + neg_mono).divide_exact(seed.labels[p])
    if q is None:
        raise NotLaurent(f"mutation at {k} leaves a non-Laurent variable")
    labels = list(seed.labels)
    labels[p] = q
    degrees = list(seed.degrees)
    degrees[p] = _add_deg(pos_deg, seed.degrees[p], -1)
    return replace(
        seed,
        matrix=tuple(new),
        labels=tuple(labels),
        degrees=tuple(degrees),
        history=seed.history + (k,),
    )


def mutate_sequence(seed: Seed, steps: Sequence[int]) -> Seed:
    for k in steps:
        seed = mutate(seed, k)
    return seed


def dual_seed(seed: Seed) -> Seed:
    """The seed of the Langlands dual datum with the same word and mutation history.

    Its exchange matrix is ``-M^T``; labels and degrees are those of the dual
    cluster structure.
    """
    base = seed_from_word(dual_datum(seed.datum), seed.word)
    if len(seed.index) < len(base.index):
        base = reduced_seed(base)
    out = replace(mutate_sequence(base, seed.history), dual=not seed.dual)
    n = len(seed.index)
    assert out.matrix == tuple(tuple(-seed.matrix[j][i] for j in range(n)) for i in range(n))
    return out


def check_homogeneous(seed: Seed) -> tuple:
    """Test ``sum_i |z_i| M_ij = 0`` for every mutable ``j``.

    Returns
    -------
    (bool, witness)
        ``witness`` is the first violating column index or ``None``.
    """
    n = len(seed.index)
    for j in seed.index:
        if j not in seed.mutable:
            continue
        pj = seed.pos(j)
        acc = tuple(tuple(0 for _ in w) for w in seed.degrees[0])
        for i in range(n):
            c = seed.matrix[i][pj]
            if c:
                acc = _add_deg(acc, seed.degrees[i], c)
        if any(any(x for x in w) for w in acc):
            return False, j
    return True, None


def is_skew_symmetrized(seed: Seed) -> bool:
    """``M D`` is skew-symmetric."""
    d = seed.symmetrizer
    m = seed.matrix
    n = len(m)
    return all(m[i][j] * d[j] == -m[j][i] * d[i] for i in range(n) for j in range(n))


def reduced_seed(seed: Seed) -> Seed:
    """Restriction to ``L = [-r..-1] + J`` with the frozen ``Delta_{w0 w_i, w_i}`` set to one."""
    keep = [k for k in seed.index if k < 0 or k in seed.mutable]
    pos = [seed.pos(k) for k in keep]
    nv_old = seed.labels[0].nvars
    initial_index = tuple(range(-seed.datum.rank, 0)) + tuple(range(1, len(seed.word) + 1))
    initial_keep = [initial_index.index(k) for k in initial_index if k < 0 or k in seed.mutable]
    drop = {p: 1 for p in range(nv_old) if p not in initial_keep}
    labels = []
    for p in pos:
        lab = seed.labels[p].specialize(drop)
        terms = {tuple(e[q] for q in initial_keep): c for e, c in lab.terms.items()}
        labels.append(LaurentPoly(len(initial_keep), terms))
    return replace(
        seed,
        index=tuple(keep),
        matrix=tuple(tuple(seed.matrix[a][b] for b in pos) for a in pos),
        labels=tuple(labels),
        degrees=tuple(seed.degrees[p] for p in pos),
        symmetrizer=tuple(seed.symmetrizer[p] for p in pos),
    )
