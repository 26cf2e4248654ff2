"""Root data, Weyl group arithmetic and the comparison map on Cartan subalgebras.

Conventions
-----------
* ``A[i][j] = <alpha_j, alpha_i^vee>`` (0-based storage, 1-based node labels
  in every public function that accepts a node).
* The symmetrizer ``d`` is the minimal positive integer vector with
  ``A[i][j] d[j] = A[j][i] d[i]``.
* Weights are tuples of coordinates in the fundamental weight basis, so the
  simple root ``alpha_i`` is column ``i`` of ``A``.
* Coweights are tuples of coordinates in the simple coroot basis.
* A word ``(i_1, ..., i_k)`` denotes ``s_{i_1} ... s_{i_k}``; acting on a
  weight, the rightmost reflection is applied first.
* The invariant form on weights satisfies ``(omega_i, alpha_j) = delta_ij / d_j``,
  so ``(alpha_i, alpha_j) = A[i][j] / d[i]`` and long roots have squared
  length 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import linalg
from .errors import BadIndex, NotReduced, UnsupportedType

__all__ = [
    "CartanDatum",
    "Weight",
    "Coweight",
    "WeylWord",
    "build_cartan",
    "parse_type",
    "dual_datum",
    "simple_root",
    "reflect",
    "weyl_act",
    "weyl_matrix",
    "is_reduced",
    "check_reduced",
    "longest_word",
    "reduced_word",
    "bilinear_weights",
    "weight_gram",
    "comparison_psi",
    "psi_matrix",
    "positive_roots",
    "root_coordinates",
    "is_dominant",
    "star",
    "rho",
]

Weight = tuple
Coweight = tuple
WeylWord = tuple


@dataclass(frozen=True)
class CartanDatum:
    """A finite type Cartan matrix with its minimal symmetrizer."""

    family: str
    rank: int
    cartan: tuple = field(repr=False)
    symmetrizer: tuple = ()

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def A(self) -> list:
        return [list(r) for r in self.cartan]

    @property
    def d(self) -> tuple:
        return self.symmetrizer

    def __str__(self) -> str:
        return self.name


def _minimal_symmetrizer(a: Sequence[Sequence[int]]) -> tuple:
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] != 0 and d[j] is None:
                    # a[i][j] d[j] = a[j][i] d[i]
                    d[j] = d[i] * Fraction(a[j][i], a[i][j])
                    stack.append(j)
    den = 1
    for x in d:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def _cartan_matrix(family: str, n: int) -> list:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if family in "ABCD":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    if family == "B":
        a[n - 1][n - 2] = -2
    elif family == "C":
        a[n - 2][n - 1] = -2
    elif family == "D":
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif family == "G":
        a[0][1], a[1][0] = -3, -1
    return a


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "G": 2}


@lru_cache(maxsize=None)
def build_cartan(family: str, rank: int) -> CartanDatum:
    """Cartan datum of a finite type in Bourbaki numbering.

    In type ``C`` the last root is long; in ``B`` it is short; in ``G2`` the
    first root is short.  Hence ``C2`` has ``A = [[2,-2],[-1,2]]`` and
    ``d = (2, 1)``.
    """
    family = str(family).upper()
    if family not in _MIN_RANK or not isinstance(rank, int) or rank < _MIN_RANK[family]:
        raise UnsupportedType(f"unsupported type {family}{rank}")
    if family == "G" and rank != 2:
        raise UnsupportedType("only G2 exists")
    a = _cartan_matrix(family, rank)
    return CartanDatum(family, rank, tuple(tuple(r) for r in a), _minimal_symmetrizer(a))


def parse_type(text: str) -> CartanDatum:
    """Parse strings such as ``"A2"`` or ``"c2"``."""
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise UnsupportedType(f"cannot parse type {text!r}")
    return build_cartan(text[0].upper(), int(text[1:]))


_DUAL_FAMILY = {"A": "A", "B": "C", "C": "B", "D": "D", "G": "G"}


def dual_datum(datum: CartanDatum) -> CartanDatum:
    """Langlands dual datum: the transposed Cartan matrix.

    For ``G2`` the transpose is again returned with family ``G`` although it
    uses the opposite numbering.
    """
    at = linalg.transpose(datum.cartan)
    return CartanDatum(
        _DUAL_FAMILY[datum.family],
        datum.rank,
        tuple(tuple(r) for r in at),
        _minimal_symmetrizer(at),
    )


def _check_node(datum: CartanDatum, i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= datum.rank:
        raise BadIndex(f"node {i} outside [1, {datum.rank}]")


def simple_root(datum: CartanDatum, i: int) -> Weight:
    _check_node(datum, i)
    return tuple(datum.cartan[j][i - 1] for j in range(datum.rank))


def reflect(datum: CartanDatum, i: int, gamma: Sequence) -> Weight:
    """``s_i(gamma) = gamma - <gamma, alpha_i^vee> alpha_i``."""
    _check_node(datum, i)
    c = gamma[i - 1]
    col = i - 1
    return tuple(g - c * datum.cartan[j][col] for j, g in enumerate(gamma))


def weyl_act(datum: CartanDatum, word: Sequence[int], gamma: Sequence) -> Weight:
    """Apply ``s_{i_1} ... s_{i_k}`` to ``gamma`` (rightmost first)."""
    for i in word:
        _check_node(datum, i)
    out = tuple(gamma)
    for i in reversed(tuple(word)):
        out = reflect(datum, i, out)
    return out


def weyl_matrix(datum: CartanDatum, word: Sequence[int]) -> list:
    """Integer matrix of the Weyl element acting on fundamental-weight coordinates."""
    r = datum.rank
    cols = [weyl_act(datum, word, tuple(int(k == j) for k in range(r))) for j in range(r)]
    return linalg.transpose(cols)


def _inv_cartan(datum: CartanDatum) -> list:
    return _inv_cartan_cached(datum.cartan)


@lru_cache(maxsize=None)
def _inv_cartan_cached(cartan: tuple) -> list:
    return linalg.inverse(cartan)


def root_coordinates(datum: CartanDatum, gamma: Sequence) -> tuple:
    """Coordinates of a weight in the simple root basis (exact rationals)."""
    return tuple(linalg.matvec(_inv_cartan(datum), gamma))


def _is_positive_root(datum: CartanDatum, gamma: Sequence) -> bool:
    c = root_coordinates(datum, gamma)
    return any(x > 0 for x in c) and all(x >= 0 for x in c)


def is_reduced(datum: CartanDatum, word: Sequence[int]) -> bool:
    """True when ``word`` is a reduced expression."""
    prefix: list = []
    for i in word:
        _check_node(datum, i)
        if not _is_positive_root(datum, weyl_act(datum, prefix, simple_root(datum, i))):
            return False
        prefix.append(i)
    return True


def check_reduced(datum: CartanDatum, word: Sequence[int], longest: bool = False) -> tuple:
    """Validate a word, optionally requiring that it represents ``w0``."""
    word = tuple(int(i) for i in word)
    if not is_reduced(datum, word):
        raise NotReduced(f"word {word} is not reduced")
    if longest and len(word) != len(positive_roots(datum)):
        raise NotReduced(f"word {word} is not a reduced word for w0")
    return word


def reduced_word(datum: CartanDatum, matrix: Sequence[Sequence[int]]) -> WeylWord:
    """Lexicographically least reduced word of the Weyl element ``matrix``."""
    r = datum.rank
    w = [list(row) for row in matrix]
    word = []
    while True:
        winv = linalg.to_int(linalg.inverse(w))
        for i in range(1, r + 1):
            image = tuple(linalg.matvec(winv, simple_root(datum, i)))
            if not _is_positive_root(datum, image):
                word.append(i)
                si = weyl_matrix(datum, (i,))
                w = linalg.matmul(si, w)
                break
        else:
            return tuple(word)


@lru_cache(maxsize=None)
def longest_word(datum: CartanDatum) -> WeylWord:
    """Lexicographically least reduced word for the longest element."""
    word: list = []
    while True:
        for i in range(1, datum.rank + 1):
            if _is_positive_root(datum, weyl_act(datum, word, simple_root(datum, i))):
                word.append(i)
                break
        else:
            break
    return reduced_word(datum, weyl_matrix(datum, word))


def star(datum: CartanDatum, i: int) -> int:
    """The node ``i*`` with ``w0(alpha_i) = -alpha_{i*}``."""
    img = weyl_act(datum, longest_word(datum), simple_root(datum, i))
    neg = tuple(-x for x in img)
    for j in range(1, datum.rank + 1):
        if simple_root(datum, j) == neg:
            return j
    raise AssertionError("w0 does not permute the negative simple roots")


@lru_cache(maxsize=None)
def _gram_cached(cartan: tuple, d: tuple) -> tuple:
    inv = linalg.inverse(cartan)
    n = len(d)
    return tuple(tuple(Fraction(inv[i][j]) / d[i] for j in range(n)) for i in range(n))


def weight_gram(datum: CartanDatum) -> tuple:
    """Gram matrix ``(omega_i, omega_j) = (A^{-1})_{ij} / d_i``."""
    return _gram_cached(datum.cartan, datum.symmetrizer)


def bilinear_weights(datum: CartanDatum, gamma: Sequence, delta: Sequence) -> Fraction:
    """Invariant form on weights given in fundamental-weight coordinates."""
    g = weight_gram(datum)
    total = Fraction(0)
    for i, x in enumerate(gamma):
        if x:
            for j, y in enumerate(delta):
                if y:
                    total += x * y * g[i][j]
    return total


def psi_matrix(datum: CartanDatum) -> list:
    """Matrix of ``psi_h`` from simple-coroot coordinates to weight coordinates.

    Column ``i`` is ``d_i alpha_i``, so the matrix is ``A diag(d)``.
    """
    r = datum.rank
    return [[datum.cartan[j][i] * datum.symmetrizer[i] for i in range(r)] for j in range(r)]


def comparison_psi(datum: CartanDatum, x: Sequence) -> Weight:
    """Image of a coweight (simple-coroot coordinates) under ``alpha_i^vee -> d_i alpha_i``."""
    return tuple(linalg.matvec(psi_matrix(datum), x))


@lru_cache(maxsize=None)
def positive_roots(datum: CartanDatum) -> tuple:
    """All positive roots with their coroots.

    Returns
    -------
    tuple of (root, coroot)
        ``root`` in fundamental-weight coordinates, ``coroot`` in simple
        coroot coordinates.  Simple roots come first, then roots in order of
        discovery by reflection.
    """
    r = datum.rank
    found = [simple_root(datum, i) for i in range(1, r + 1)]
    seen = set(found)
    queue = list(found)
    while queue:
        beta = queue.pop(0)
        for i in range(1, r + 1):
            img = reflect(datum, i, beta)
            if img not in seen and _is_positive_root(datum, img):
                seen.add(img)
                found.append(img)
                queue.append(img)
    out = []
    for beta in found:
        c = root_coordinates(datum, beta)
        norm = bilinear_weights(datum, beta, beta)
        cor = []
        for i in range(r):
            ai = simple_root(datum, i + 1)
            cor.append(c[i] * bilinear_weights(datum, ai, ai) / norm)
        out.append((tuple(linalg.to_int(list(beta))), tuple(linalg.to_int(cor))))
    return tuple(out)


def is_dominant(gamma: Sequence) -> bool:
    return all(x >= 0 for x in gamma)


def rho(datum: CartanDatum) -> Weight:
    return (1,) * datum.rank
