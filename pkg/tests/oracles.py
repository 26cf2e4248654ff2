"""Independent reference computations used as test oracles.

Nothing here imports the library's algorithms; only plain Python.  Running
``python3 tests/oracles.py`` regenerates ``tests/data/oracles.json``, whose
frozen values the tests compare against.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
import os
from collections import Counter

DATA = os.path.join(os.path.dirname(__file__), "data", "oracles.json")

CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "C2": [[2, -2], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],
}


# ---------------------------------------------------------------------------
# type A weight multiplicities by Gelfand-Tsetlin patterns


def _partition(lam):
    n = len(lam)
    return [sum(lam[i:]) for i in range(n)] + [0]


def _gt_rows(top):
    """All rows interlacing ``top`` (one shorter)."""
    ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
    return itertools.product(*ranges)


def gt_multiplicities(lam):
    """Weight multiplicities of ``V_lam`` for ``sl_{n+1}``, weights in omega coordinates."""
    top = tuple(_partition(lam))
    counts = Counter()

    def rec(row, sums):
        if len(row) == 1:
            sums = sums + [row[0]]
            sums.reverse()  # sums[k] = sum of row of length k + 1
            eps = [sums[0]] + [sums[k] - sums[k - 1] for k in range(1, len(sums))]
            counts[tuple(eps[i] - eps[i + 1] for i in range(len(eps) - 1))] += 1
            return
        for nxt in _gt_rows(row):
            rec(nxt, sums + [sum(row)])

    rec(top, [])
    return dict(counts)


def weyl_dim_type_a(lam):
    n = len(lam) + 1
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= sum(lam[i:j]) + j - i
            den *= j - i
    return num // den


# ---------------------------------------------------------------------------
# Weyl groups by brute-force closure


def weyl_group(cartan):
    """Elements as matrices on omega coordinates with their lengths."""
    r = len(cartan)
    gens = []
    for i in range(r):
        # s_i(omega_j) = omega_j - delta_ij alpha_i, alpha_i = sum_k A[i][k] omega_k
        m = [[int(a == b) for b in range(r)] for a in range(r)]
        for k in range(r):
            m[k][i] -= cartan[i][k]
        gens.append(tuple(map(tuple, m)))
    ident = tuple(tuple(int(a == b) for b in range(r)) for a in range(r))
    lengths = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = tuple(tuple(sum(s[a][k] * g[k][b] for k in range(r)) for b in range(r)) for a in range(r))
                if h not in lengths:
                    lengths[h] = lengths[g] + 1
                    new.append(h)
        frontier = new
    return lengths


# ---------------------------------------------------------------------------
# lattice points by box enumeration


def box_points(rows, box):
    """Integer ``t`` in ``[-box, box]^d`` with ``n.t + c >= 0`` for every row."""
    d = len(rows[0]) - 1
    out = []
    for t in itertools.product(range(-box, box + 1), repeat=d):
        if all(sum(r[i] * t[i] for i in range(d)) + r[-1] >= 0 for r in rows):
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# SL2 brackets in closed form
#
# b = [[a, 0], [c, 1/a]] with a > 0.  Differentiating the r-matrix formula by
# hand gives
#   {a, c} = i a c / 2,   {a, conj c} = -i a conj(c) / 2,
#   {c, conj c} = i (a^2 - a^-2).


def sl2_brackets(a, c):
    return {
        "a_c": 0.5j * a * c,
        "a_cbar": -0.5j * a * c.conjugate(),
        "c_cbar": 1j * (a * a - 1 / (a * a)),
    }


def sl2_lambda_phi(s, x, phi):
    """``{lambda_{-1}, phi_1}_s`` and ``{lambda_1, phi_1}_s`` for A1 in closed form."""
    a = math.exp(s * x[0] / 2)
    c = cmath.exp(s * x[1] / 2 + 1j * phi)
    br = sl2_brackets(a, c)
    lm_ac = br["a_cbar"] / (a * c.conjugate())
    ll_ac = br["a_c"] / (a * c)
    # lambda_{-1} = 2 log(a) / s, phi_1 = (log c - log conj c) / 2i
    first = (2 * ll_ac - 2 * lm_ac) / 2j
    lm_cc = br["c_cbar"] / (c * c.conjugate())
    second = (-2 * lm_cc) / 2j
    return first.real, second.real


# ---------------------------------------------------------------------------
# frozen values


def compute():
    out = {"weyl": {}, "gt": {}, "weyl_dim": {}, "sl2": []}
    for name, a in CARTAN.items():
        g = weyl_group(a)
        out["weyl"][name] = {"order": len(g), "longest": max(g.values())}
    for lam in itertools.product(range(7), repeat=2):
        if sum(lam) <= 6:
            key = ",".join(map(str, lam))
            out["gt"]["A2:" + key] = sorted([list(w), m] for w, m in gt_multiplicities(lam).items())
            out["weyl_dim"]["A2:" + key] = weyl_dim_type_a(lam)
    for lam in [(1, 0, 0), (0, 1, 0), (1, 1, 1), (2, 0, 1)]:
        key = ",".join(map(str, lam))
        out["gt"]["A3:" + key] = sorted([list(w), m] for w, m in gt_multiplicities(lam).items())
        out["weyl_dim"]["A3:" + key] = weyl_dim_type_a(lam)
    for s, x, phi in [(-3.0, (0.3, -1.5), 0.7), (-10.0, (-0.4, -1.4), 2.0), (-6.0, (0.2, -1.3), 4.0)]:
        first, second = sl2_lambda_phi(s, x, phi)
        out["sl2"].append({"s": s, "x": list(x), "phi": phi, "lambda_m1_phi1": first, "lambda_1_phi1": second})
    return out


def load():
    with open(DATA) as fh:
        return json.load(fh)


if __name__ == "__main__":
    os.makedirs(os.path.dirname(DATA), exist_ok=True)
    with open(DATA, "w") as fh:
        json.dump(compute(), fh, indent=1, sort_keys=True)
        fh.write("\n")
    print("wrote", DATA)
