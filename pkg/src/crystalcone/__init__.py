"""Exact computations with Berenstein-Kazhdan cones, string polytopes and
the constant Poisson structure of the partial tropicalization.

Submodules
----------
cartan, symgroup, cluster, tropical, polytopes, reps, poisson, langlands,
analytic, gromov, cli
"""

from __future__ import annotations

from .cartan import CartanDatum, build_cartan, dual_datum, longest_word, parse_type
from .errors import CrystalConeError
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "CartanDatum",
    "CrystalConeError",
    "build_cartan",
    "dual_datum",
    "longest_word",
    "parse_type",
    "__version__",
]

__version__ = "0.1.0"
