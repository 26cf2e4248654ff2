"""Exact Fourier-Motzkin elimination on rational inequality systems.

A row ``(n_0, ..., n_{d-1}, c)`` stands for ``n . x + c >= 0``.  Rows are
kept primitive (integer, gcd one) so duplicates are detected exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .lp import solve_lp

__all__ = ["normalize_row", "eliminate", "prefix_systems", "coordinate_bounds", "prune_redundant"]

Row = tuple


def normalize_row(row: Sequence) -> Row:
    """Scale a row by a positive rational to a primitive integer row."""
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _dedup(rows) -> list:
    seen = set()
    out = []
    for r in rows:
        r = normalize_row(r)
        if all(x == 0 for x in r[:-1]):
            if r[-1] < 0:
                # 0 >= positive: keep as an explicit contradiction
                r = (0,) * (len(r) - 1) + (-1,)
            else:
                continue
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def prune_redundant(rows: Sequence[Row]) -> list:
    """Drop rows implied by the others (one exact LP per row)."""
    rows = _dedup(rows)
    if any(all(x == 0 for x in r[:-1]) for r in rows):
        return [r for r in rows if all(x == 0 for x in r[:-1])][:1]
    keep = list(rows)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1:]
        if not others:
            break
        r = keep[i]
        a_ub = [[-x for x in o[:-1]] for o in others]
        b_ub = [o[-1] for o in others]
        res = solve_lp(list(r[:-1]), a_ub, b_ub)
        if res.status == "optimal" and res.value + r[-1] >= 0:
            keep.pop(i)
        else:
            i += 1
    return keep


def eliminate(rows: Sequence[Row], j: int, prune: bool = True) -> list:
    """Project out coordinate ``j``; the column stays (with zeros)."""
    pos, neg, zero = [], [], []
    for r in rows:
        (pos if r[j] > 0 else neg if r[j] < 0 else zero).append(r)
    out = list(zero)
    for p in pos:
        for q in neg:
            a, b = p[j], -q[j]
            out.append(tuple(b * x + a * y for x, y in zip(p, q)))
    out = _dedup(out)
    if prune and len(out) > 2 * (len(rows[0]) if rows else 0):
        out = prune_redundant(out)
    return out


def prefix_systems(rows: Sequence[Row], d: int) -> list:
    """Systems ``S_0, ..., S_{d-1}``; ``S_k`` involves only ``x_0..x_k``.

    ``S_{d-1}`` is the input.  ``S_k`` is its projection obtained by
    eliminating ``x_{d-1}, ..., x_{k+1}``.
    """
    systems = [None] * d
    cur = _dedup(rows)
    for k in range(d - 1, -1, -1):
        systems[k] = cur
        if k:
            cur = eliminate(cur, k)
    return systems


def coordinate_bounds(system: Sequence[Row], k: int, prefix: Sequence) -> tuple:
    """Rational ``(lo, hi)`` for ``x_k`` given fixed ``x_0..x_{k-1}``.

    ``None`` marks an infinite side; ``(1, 0)`` signals an empty range.
    """
    lo = hi = None
    for r in system:
        a = r[k]
        rest = r[-1] + sum(r[i] * prefix[i] for i in range(k))
        if a == 0:
            if rest < 0:
                return Fraction(1), Fraction(0)
            continue
        v = Fraction(-rest, 1) / a
        if a > 0:
            lo = v if lo is None or v > lo else lo
        else:
            hi = v if hi is None or v < hi else hi
    return lo, hi
