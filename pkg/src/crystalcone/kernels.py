"""Backend selection for the lattice enumeration kernel.

The compiled extension is used when it imports and ``CRYSTALCONE_PURE`` is
unset; otherwise the pure-Python kernel.  Work is split over slabs of the
first coordinate and run on up to ``CRYSTALCONE_THREADS`` threads (the
compiled kernel releases the GIL).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from . import _kernels_py

__all__ = ["BACKEND", "enumerate_points", "max_threads", "load_backend"]


def load_backend(pure: bool | None = None):
    if pure is None:
        pure = bool(os.environ.get("CRYSTALCONE_PURE"))
    if not pure:
        try:
            from . import _kernels  # type: ignore[attr-defined]

            return _kernels
        except ImportError:
            pass
    return _kernels_py


_backend = load_backend()
BACKEND = _backend.BACKEND


def max_threads() -> int:
    env = os.environ.get("CRYSTALCONE_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def enumerate_points(systems, d: int, first_range: tuple | None = None, backend=None) -> list:
    """Integer points of prefix systems, lexicographically sorted.

    ``first_range`` gives integer bounds on ``x_0`` used to split work.
    """
    be = backend or _backend
    threads = max_threads()
    if d == 0 or first_range is None or threads == 1 or be is _kernels_py:
        return be.enumerate_points(systems, d)
    lo, hi = first_range
    span = hi - lo + 1
    if span < 2 * threads:
        return be.enumerate_points(systems, d, lo, hi)
    step = -(-span // threads)
    slabs = [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda ab: be.enumerate_points(systems, d, ab[0], ab[1]), slabs))
    return [p for part in parts for p in part]
