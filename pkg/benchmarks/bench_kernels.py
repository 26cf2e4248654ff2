"""Compare the compiled and pure-Python lattice enumeration kernels.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each case is a
string polytope; both kernels must return the same points.
"""

from __future__ import annotations

import argparse
import time

from crystalcone import _kernels_py, kernels
from crystalcone.cartan import build_cartan
from crystalcone.polytopes import string_polytope

CASES = [
    ("A2", (1, 2, 1), (20, 20)),
    ("A3", None, (4, 4, 4)),
    ("B2", None, (15, 15)),
    ("C2", None, (15, 15)),
]


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = kernels.load_backend(pure=False)
    if fast is _kernels_py:
        print("compiled kernel not available; only the pure-Python kernel will run")
    print(f"{'case':<18}{'points':>9}{'python s':>12}{'compiled s':>12}{'speedup':>9}")
    for name, word, lam in CASES:
        poly = string_polytope(build_cartan(name[0], int(name[1:])), word, lam)
        systems, d = poly.systems(), poly.dim
        ref = _kernels_py.enumerate_points(systems, d)
        got = fast.enumerate_points(systems, d)
        assert [tuple(p) for p in got] == [tuple(p) for p in ref], name
        tp = _time(lambda: _kernels_py.enumerate_points(systems, d), args.repeat)
        tc = _time(lambda: fast.enumerate_points(systems, d), args.repeat)
        label = f"{name} {lam}"
        print(f"{label:<18}{len(ref):>9}{tp:>12.4f}{tc:>12.4f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
