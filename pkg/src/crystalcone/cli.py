"""Command line front end.

Every command prints one JSON document to stdout.  Exit codes: 0 on
success, 2 on a domain error, 3 on a parse error.  Rationals are written as
``{"num": "p", "den": "q"}`` so no precision is lost.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import tempfile
from fractions import Fraction
from typing import Sequence

from . import analytic, gromov, langlands, poisson, polytopes
from .cartan import CartanDatum, check_reduced, dual_datum, is_dominant, longest_word, parse_type
from .cluster import check_homogeneous, is_skew_symmetrized, mutate_sequence, seed_from_word
from .errors import CrystalConeError, Inconclusive
from .reps import freudenthal, weyl_dim
from .symgroup import CHART_KINDS
from .tropical import bk_cone, string_cone

__all__ = ["main", "build_parser", "ParseError", "to_json", "from_json", "run"]

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PARSE = 3


class ParseError(Exception):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise ParseError(message)


# ---------------------------------------------------------------------------
# serialization


def to_json(obj):
    """Plain JSON data with rationals as ``{"num", "den"}`` strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj)
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return to_json(obj.item())
    if hasattr(obj, "tolist"):
        return to_json(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(obj):
    """Inverse of :func:`to_json` for rationals."""
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return Fraction(int(obj["num"]), int(obj["den"]))
        return {k: from_json(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [from_json(v) for v in obj]
    return obj


def _write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# argument parsing helpers


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise ParseError(f"expected comma separated integers, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational number, got {text!r}") from None


def _s_grid(text: str) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError("s grid must be lo:hi:step")
    lo, hi, step = (_rational(p) for p in parts)
    if step == 0:
        raise ParseError("s grid step must be nonzero")
    out = []
    x = lo
    if step > 0:
        while x <= hi:
            out.append(x)
            x += step
    else:
        while x >= hi:
            out.append(x)
            x += step
    if not out:
        raise ParseError("s grid is empty")
    if any(v >= 0 for v in out):
        raise ParseError("s grid values must be negative")
    return [float(v) for v in out]


def _datum(args) -> CartanDatum:
    return parse_type(args.type)


def _word(args, datum: CartanDatum) -> tuple:
    if args.word is None:
        return longest_word(datum)
    return check_reduced(datum, _int_list(args.word), longest=True)


def _cone_json(cone) -> dict:
    point, slack = cone.interior_point() if cone.halfspaces else ([0] * cone.ambient_dim, 1)
    return {
        "names": list(cone.names) if cone.names else None,
        "dim": cone.ambient_dim,
        "halfspaces": [{"normal": list(n), "offset": c} for n, c in cone.halfspaces],
        "equations": [{"normal": list(n), "offset": c} for n, c in cone.equations],
        "interior_point": list(point),
        "interior_slack": slack,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_cone(args) -> tuple:
    datum = _datum(args)
    word = _word(args, datum)
    if args.string:
        cone = string_cone(datum, word)
    else:
        cone = bk_cone(datum, word, args.chart)
    cone = cone.facets()
    out = {"type": args.type, "word": list(word), "chart": "string" if args.string else args.chart}
    out.update(_cone_json(cone))
    return out, None


def cmd_count(args) -> tuple:
    datum = _datum(args)
    if args.hw is None:
        raise ParseError("--hw is required")
    lam = _int_list(args.hw)
    if len(lam) != datum.rank:
        raise ParseError(f"--hw needs {datum.rank} entries")
    cone_datum = datum if args.raw_cone else dual_datum(datum)
    word = _word(args, cone_datum)
    poly = polytopes.string_polytope(datum, word, lam, raw_cone=args.raw_cone)
    pts = polytopes.enumerate_lattice_points(poly)
    by_weight = sorted(pts.counts_by_weight.items())
    out = {
        "type": args.type,
        "word": list(word),
        "lambda": list(lam),
        "raw_cone": args.raw_cone,
        "total": len(pts),
        "by_weight": [{"weight": list(w), "count": c} for w, c in by_weight],
    }
    if args.wt is not None:
        nu = _int_list(args.wt)
        if len(nu) != datum.rank:
            raise ParseError(f"--wt needs {datum.rank} entries")
        out["nu"] = list(nu)
        out["count"] = pts.counts_by_weight.get(nu, 0)
    if len(pts) == 0:
        cert = poly.emptiness_certificate()
        out["empty_certificate"] = None if cert is None else {"y": list(cert[0]), "z": list(cert[1])}
    if is_dominant(lam) and not args.raw_cone:
        out["weyl_dim"] = weyl_dim(datum, lam)
        out["matches_freudenthal"] = dict(pts.counts_by_weight) == dict(freudenthal(datum, lam).mults)
    rows = [["weight", "count"]] + [[" ".join(map(str, w)), c] for w, c in by_weight]
    return out, rows


def cmd_poisson(args) -> tuple:
    datum = _datum(args)
    word = _word(args, datum)
    seed = seed_from_word(datum, word)
    p = poisson.pt_bracket_matrix(seed)
    special = poisson.special_chart_brackets(datum, word)
    dar = poisson.darboux_coordinates(seed)
    norm = dar["normalization"]
    r, m = datum.rank, len(word)
    canonical = poisson.canonical_form(r, m)
    return {
        "type": args.type,
        "word": list(word),
        "bracket_matrix": {"rows": list(p.rows), "cols": list(p.cols), "entries": p.as_lists()},
        "special_chart_agrees": p.entries == special.entries,
        "X": list(norm.X),
        "Y": [list(r_) for r_ in norm.Y],
        "C_phi": [list(r_) for r_ in norm.C_phi],
        "T": dar["T"],
        "darboux_ok": dar["full"] == canonical,
        "casimir_ok": poisson.casimir_check(seed),
    }, None


def cmd_gromov(args) -> tuple:
    datum = _datum(args)
    if args.hw is None:
        raise ParseError("--hw is required")
    lam = _int_list(args.hw)
    if len(lam) != datum.rank:
        raise ParseError(f"--hw needs {datum.rank} entries")
    ell = gromov.lambda_bound(datum, lam)
    poly = polytopes.string_polytope(datum, None if args.word is None else _word(args, dual_datum(datum)), lam)
    cert = gromov.search_embedding(poly, ell, args.bound, target=f"{args.type}:{','.join(map(str, lam))}")
    upper, direction = gromov.width_upper_bound(poly)
    return {
        "type": args.type,
        "lambda": list(lam),
        "ell_lambda": ell,
        "ell_lambda_2pi": float(2 * math.pi * ell),
        "certificate": {
            "status": cert.status,
            "A": [list(r_) for r_ in cert.A],
            "b": list(cert.b),
            "ell": cert.ell,
            "ell_2pi": float(2 * math.pi * cert.ell),
            "tried": cert.tried,
        },
        "verified": bool(cert.A) and gromov.verify_certificate(cert, poly),
        "width_upper_bound": {"value": upper, "direction": list(direction)},
    }, None


def cmd_converge(args) -> tuple:
    datum = _datum(args)
    word = _word(args, datum)
    grid = _s_grid(args.s_grid)
    delta = float(args.delta)
    if delta <= 0:
        raise Inconclusive("margin must be positive: boundary points carry no decay rate")
    rng = random.Random(args.seed)
    reports = []
    rows = [["point", "s", "bracket", "deviation"]]
    for k in range(args.points):
        p = analytic.random_pt_point(datum, word, delta, rng)
        rep = analytic.convergence_fit(datum, word, p, grid)
        reports.append({
            "x": list(p.x),
            "phi": list(p.phi),
            "slopes": rep.slopes,
            "slope": rep.slope,
            "pass": rep.passed,
            "max_deviation": rep.max_deviation,
            "zero_brackets": rep.zero_brackets,
        })
        for key, devs in rep.samples.items():
            for s, dv in zip(rep.s_grid, devs):
                rows.append([k, s, key, repr(dv)])
    return {
        "type": args.type,
        "word": list(word),
        "delta": delta,
        "s_grid": grid,
        "points": reports,
        "slopes": [r["slope"] for r in reports],
        "pass": all(r["pass"] for r in reports),
    }, rows


def _seed_json(seed) -> dict:
    return {
        "word": list(seed.word),
        "index": list(seed.index),
        "mutable": sorted(seed.mutable),
        "exchange_matrix": [list(r) for r in seed.matrix],
        "symmetrizer": list(seed.symmetrizer),
        "labels": [str(lab) for lab in seed.labels],
        "history": list(seed.history),
    }


def cmd_seed(args) -> tuple:
    datum = _datum(args)
    seed = seed_from_word(datum, _word(args, datum))
    out = {"type": args.type}
    out.update(_seed_json(seed))
    return out, None


def cmd_mutate(args) -> tuple:
    datum = _datum(args)
    seed = seed_from_word(datum, _word(args, datum))
    steps = _int_list(args.steps or "")
    new = mutate_sequence(seed, steps)
    back = mutate_sequence(new, tuple(reversed(steps)))
    out = {"type": args.type, "steps": list(steps)}
    out.update(_seed_json(new))
    out["checks"] = {
        "involution": back.matrix == seed.matrix and back.labels == seed.labels,
        "skew_symmetrizable": is_skew_symmetrized(new),
        "homogeneous": check_homogeneous(new)[0],
    }
    return out, None


def cmd_compare(args) -> tuple:
    datum = _datum(args)
    word = _word(args, datum)
    dual = dual_datum(datum)
    cmap = langlands.comparison_trop(datum, word)
    cone = bk_cone(datum, word, "reduced")
    cone_dual = bk_cone(dual, word, "reduced")
    ok, certs = langlands.verify_real_cone_isomorphism(cone.facets(), cone_dual.facets(), cmap)
    return {
        "type": args.type,
        "dual_type": f"{dual.family}{dual.rank}",
        "word": list(word),
        "diag": list(cmap.diag),
        "h_block": [list(r_) for r_ in cmap.h_block],
        "det": cmap.det,
        "cone_isomorphism": ok,
        "certificates": certs if ok else {k: v for k, v in certs.items()},
        "lattice_injective": langlands.lattice_injectivity(cone, cone_dual, cmap, samples=args.samples),
        "diagrams_commute": langlands.diagrams_commute(datum, word),
        "twist_compatible": langlands.verify_twist_compat(datum, word),
    }, None


COMMANDS = {
    "cone": cmd_cone,
    "count": cmd_count,
    "poisson": cmd_poisson,
    "gromov": cmd_gromov,
    "converge": cmd_converge,
    "seed": cmd_seed,
    "mutate": cmd_mutate,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", required=True, help="Cartan type such as A2 or C2")
    common.add_argument("--word", help="reduced word for w0, e.g. 1,2,1")
    common.add_argument("--json", metavar="FILE", help="also write the JSON result to FILE")
    common.add_argument("--csv", metavar="FILE", help="write tabular samples to FILE")
    common.add_argument("--verify", action="store_true", help="re-run and check determinism (and FILE)")

    parser = _Parser(prog="crystalcone", description="BK cones, string polytopes and their Poisson data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cone", parents=[common], help="tropicalized potential cone")
    p.add_argument("--chart", choices=CHART_KINDS, default="cluster")
    p.add_argument("--string", action="store_true", help="string cone of the reduced cell")

    p = sub.add_parser("count", parents=[common], help="lattice points of a string polytope")
    p.add_argument("--hw", help="highest weight a1,...,ar (fundamental weights)")
    p.add_argument("--wt", help="weight b1,...,br to report")
    p.add_argument("--raw-cone", action="store_true", help="use the cone of the given type itself")

    sub.add_parser("poisson", parents=[common], help="constant Poisson structure and Darboux form")

    p = sub.add_parser("gromov", parents=[common], help="simplex embedding certificate")
    p.add_argument("--hw", help="highest weight a1,...,ar")
    p.add_argument("--bound", type=int, default=3, help="entry bound for candidate matrices")

    p = sub.add_parser("converge", parents=[common], help="numeric convergence of scaled brackets")
    p.add_argument("--delta", default="1", type=_rational)
    p.add_argument("--s-grid", default="-4:-16:-1")
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    sub.add_parser("seed", parents=[common], help="initial seed of a word")

    p = sub.add_parser("mutate", parents=[common], help="mutate the initial seed")
    p.add_argument("--steps", help="mutation directions k1,k2,...")

    p = sub.add_parser("compare", parents=[common], help="Langlands comparison checks")
    p.add_argument("--samples", type=int, default=200)
    return parser


_VALUE_FLAGS = ("--hw", "--wt", "--s-grid", "--delta", "--word", "--steps")


def _glue_values(argv: Sequence[str]) -> list:
    """Attach values such as ``-1,0`` to their flag so they are not read as options."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str]) -> tuple:
    """Parse and execute; returns ``(json_data, csv_rows, args)``."""
    args = build_parser().parse_args(_glue_values(argv))
    data, rows = COMMANDS[args.command](args)
    return to_json(data), rows, args


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf).writerows(rows)
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        data, rows, args = run(argv)
        if args.verify:
            again, _, _ = run(argv)
            check = {"deterministic": again == data}
            if args.json and os.path.exists(args.json):
                with open(args.json) as fh:
                    check["matches_file"] = json.load(fh) == data
            data = dict(data, verify=check)
        text = json.dumps(data, indent=2, sort_keys=True)
        if args.json and not args.verify:
            _write_atomic(args.json, text + "\n")
        if args.csv and rows is not None:
            _write_atomic(args.csv, _csv_text(rows))
        print(text)
        if args.verify and not all(data["verify"].values()):
            return EXIT_DOMAIN
        return EXIT_OK
    except ParseError as exc:
        print(json.dumps({"error": "parse", "message": str(exc)}), file=sys.stderr)
        return EXIT_PARSE
    except CrystalConeError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
