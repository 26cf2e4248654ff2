"""Representation-theoretic ground truth: Weyl dimensions and Freudenthal multiplicities.

This module depends only on :mod:`crystalcone.cartan`; it never touches the
polyhedral pipeline so it can serve as an independent oracle for lattice
point counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cartan import (
    CartanDatum,
    bilinear_weights,
    positive_roots,
    reflect,
    root_coordinates,
    simple_root,
)
from .errors import NotDominant

__all__ = ["CharacterTable", "weyl_dim", "freudenthal", "dominant_conjugate", "weyl_orbit"]


@dataclass(frozen=True)
class CharacterTable:
    """Weight multiplicities of an irreducible module.

    Attributes
    ----------
    highest : tuple
        Highest weight in fundamental-weight coordinates.
    mults : dict
        Weight to positive multiplicity.
    """

    highest: tuple
    mults: dict

    @property
    def dim(self) -> int:
        return sum(self.mults.values())

    def __getitem__(self, nu) -> int:
        return self.mults.get(tuple(nu), 0)


def _check_dominant(lam: Sequence[int]) -> tuple:
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise NotDominant(f"{lam} is not dominant")
    return lam


def weyl_dim(datum: CartanDatum, lam: Sequence[int]) -> int:
    """Dimension of the irreducible module of highest weight ``lam``."""
    lam = _check_dominant(lam)
    num = Fraction(1)
    for _, cor in positive_roots(datum):
        num *= Fraction(sum((l + 1) * c for l, c in zip(lam, cor)), sum(cor))
    assert num.denominator == 1
    return int(num)


def dominant_conjugate(datum: CartanDatum, mu: Sequence) -> tuple:
    mu = tuple(mu)
    while True:
        i = next((k for k, x in enumerate(mu) if x < 0), None)
        if i is None:
            return mu
        mu = reflect(datum, i + 1, mu)


def weyl_orbit(datum: CartanDatum, mu: Sequence) -> set:
    orbit = {tuple(mu)}
    frontier = [tuple(mu)]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(1, datum.rank + 1):
                w = reflect(datum, i, v)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    return orbit


def _dominant_below(datum: CartanDatum, lam: tuple) -> list:
    """Dominant weights ``mu <= lam`` with their level ``height(lam - mu)``."""
    top = [int(x) for x in root_coordinates(datum, lam)]
    out = []
    for n in itertools.product(*(range(t + 1) for t in top)):
        mu = list(lam)
        for i, k in enumerate(n):
            if k:
                a = simple_root(datum, i + 1)
                mu = [x - k * y for x, y in zip(mu, a)]
        if all(x >= 0 for x in mu) and all(
            Fraction(x) == int(x) for x in root_coordinates(datum, [l - m for l, m in zip(lam, mu)])
        ):
            out.append((sum(n), tuple(mu)))
    out.sort()
    return out


def freudenthal(datum: CartanDatum, lam: Sequence[int]) -> CharacterTable:
    """Full weight multiplicity table by Freudenthal's recursion."""
    lam = _check_dominant(lam)
    rho = (1,) * datum.rank
    lr = tuple(l + 1 for l in lam)
    norm_lr = bilinear_weights(datum, lr, lr)
    roots = [beta for beta, _ in positive_roots(datum)]
    dom = _dominant_below(datum, lam)
    dom_mult: dict = {}

    def mult(mu: tuple) -> int:
        return dom_mult.get(dominant_conjugate(datum, mu), 0)

    for level, mu in dom:
        if level == 0:
            dom_mult[mu] = 1
            continue
        total = Fraction(0)
        for beta in roots:
            k = 1
            while True:
                nu = tuple(m + k * b for m, b in zip(mu, beta))
                if not _below(datum, lam, nu):
                    break
                m = mult(nu)
                if m:
                    total += m * bilinear_weights(datum, nu, beta)
                k += 1
        mr = tuple(m + r for m, r in zip(mu, rho))
        denom = norm_lr - bilinear_weights(datum, mr, mr)
        val = 2 * total / denom
        assert val.denominator == 1 and val >= 0
        if val:
            dom_mult[mu] = int(val)
    mults = {}
    for mu, m in dom_mult.items():
        for nu in weyl_orbit(datum, mu):
            mults[nu] = m
    return CharacterTable(lam, mults)


def _below(datum: CartanDatum, lam: tuple, nu: tuple) -> bool:
    """True when ``lam - nu`` is a nonnegative combination of simple roots."""
    c = root_coordinates(datum, [l - n for l, n in zip(lam, nu)])
    return all(x >= 0 for x in c)
