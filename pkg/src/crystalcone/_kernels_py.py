"""Pure-Python lattice point enumeration kernel.

Same contract as the compiled ``_kernels`` extension: ``systems`` is a list
of integer rows per prefix length, ``systems[k]`` only involving
``x_0..x_k``.  Points are returned in lexicographic order.
"""

from __future__ import annotations

__all__ = ["enumerate_points", "BACKEND"]

BACKEND = "python"


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _range(rows, k: int, prefix: list):
    lo = hi = None
    for r in rows:
        a = r[k]
        rest = r[-1]
        for i in range(k):
            rest += r[i] * prefix[i]
        if a > 0:
            v = _ceil_div(-rest, a)
            if lo is None or v > lo:
                lo = v
        elif a < 0:
            v = rest // (-a)
            if hi is None or v < hi:
                hi = v
        elif rest < 0:
            return 1, 0
    return lo, hi


def enumerate_points(systems, d: int, first_lo: int | None = None, first_hi: int | None = None) -> list:
    """All integer points; optionally restrict ``x_0`` to ``[first_lo, first_hi]``."""
    out = []
    prefix = [0] * d

    def rec(k: int):
        lo, hi = _range(systems[k], k, prefix)
        if lo is None or hi is None:
            raise OverflowError("unbounded coordinate")
        if k == 0:
            if first_lo is not None:
                lo = max(lo, first_lo)
            if first_hi is not None:
                hi = min(hi, first_hi)
        for v in range(lo, hi + 1):
            prefix[k] = v
            if k == d - 1:
                out.append(tuple(prefix))
            else:
                rec(k + 1)

    if d == 0:
        return [()]
    rec(0)
    return out
