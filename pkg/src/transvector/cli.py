"""Command-line interface.

Subcommands: check, lemma, roots, construct, verify, bisector, catalog.
Every run emits one JSON envelope (stdout by default, --out writes a file
atomically).  Exit statuses: 0 all declared expectations pass, 1 an
expectation failed, 2 configuration/input error, 3 numerical breakdown.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from fractions import Fraction

import numpy as np

from . import rng
from .catalog import (bisector_equidistance_check, build_pair, build_space,
                      list_pairs, negative_control, parse_space_id)
from .errors import ConfigError, LemmaFalsified, NumericalBreakdown
from .exactla import frac
from .extension import _sample_y, condition_holds, verify_lemma_conclusion
from .geometry import (GridSpec, ImmersionSpec, distance_law_check,
                       export_point_cloud, mean_curvature_report)
from .liealg import MODE_EXACT
from .report import envelope, write_report
from .roots import (build_root_space_example, maximal_abelian,
                    restricted_root_decomposition, verify_commutation_rules)
from .subspaces import Subspace

_TERM_RE = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?([A-Za-z]\w*)$")


def parse_x_expression(a, expr: str):
    """Parse 'P1 + 2*Q1 - 1/2*D1' over the algebra's labels.

    The single token 'bad' names the bundled sl(3,R) counterexample normal,
    so the shipped negative control is reachable from the shell.
    """
    text = expr.strip()
    if text == "bad":
        if a.name != "sl3r":
            raise ConfigError("the 'bad' alias is the sl3r counterexample; "
                              "space is %s" % a.name)
        _, _, x = negative_control()
        return x
    combo: dict = {}
    compact = text.replace(" ", "")
    if not compact:
        raise ConfigError("empty X expression")
    for term in re.findall(r"[+-]?[^+-]+", compact):
        m = _TERM_RE.match(term)
        if not m:
            raise ConfigError("cannot parse X term %r" % term)
        sign, coeff, label = m.groups()
        if label not in a.labels:
            raise ConfigError("unknown basis label %r (space %s has %s)"
                              % (label, a.name, ", ".join(a.labels)))
        c = frac(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        combo[label] = combo.get(label, Fraction(0)) + c
    return a.from_labels(combo)


def load_subspace_file(a, path: str) -> Subspace:
    """JSON list of {label: rational} vectors spanning s."""
    import json

    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ConfigError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise ConfigError("%s is not valid JSON: %s" % (path, e))
    if isinstance(data, dict):
        data = data.get("vectors")
    if not isinstance(data, list) or not data:
        raise ConfigError("%s must hold a nonempty list of "
                          "{label: rational} vectors" % path)
    vectors = []
    for k, combo in enumerate(data):
        if not isinstance(combo, dict) or not combo:
            raise ConfigError("%s: vector %d is not a label mapping" % (path, k))
        try:
            vectors.append(a.from_labels({lab: frac(c) for lab, c in combo.items()}))
        except KeyError as e:
            raise ConfigError("%s: vector %d uses unknown label %s" % (path, k, e))
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError("%s: vector %d has a bad rational: %s" % (path, k, e))
    try:
        return Subspace(a, vectors, MODE_EXACT)
    except ValueError as e:
        raise ConfigError("%s: %s" % (path, e))


def _algebra_from_args(args):
    if getattr(args, "algebra_file", None):
        from .algfile import parse_algebra_file

        return parse_algebra_file(args.algebra_file)
    if not getattr(args, "space", None):
        raise ConfigError("--space (or --algebra-file) is required")
    return build_space(args.space)


def _pair_from_args(args):
    """(algebra, s, x, meta) from --pair or --s/--X."""
    if getattr(args, "pair", None):
        entry = build_pair(args.space, args.pair)
        a = entry.algebra
        x = parse_x_expression(a, args.x) if getattr(args, "x", None) else entry.x_default
        return a, entry.s, x, {"pair": entry.pair_name, "space": entry.space_id}
    a = _algebra_from_args(args)
    if not getattr(args, "s_file", None) or not getattr(args, "x", None):
        raise ConfigError("need either --pair or both --s and --X")
    s = load_subspace_file(a, args.s_file)
    x = parse_x_expression(a, args.x)
    return a, s, x, {"pair": None, "space": a.name, "s_file": args.s_file}


def _grid_from_args(args) -> GridSpec:
    def _range(text):
        try:
            lo, hi = (float(v) for v in text.split(","))
        except ValueError:
            raise ConfigError("ranges are written 'lo,hi', got %r" % text)
        return (lo, hi)

    return GridSpec(t_range=_range(args.t_range), t_steps=args.t_steps,
                    y_range=_range(args.y_range), y_steps=args.y_steps)


def _config_echo(args) -> dict:
    skip = {"func", "out"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k] = v if not isinstance(v, float) else float(v)
    return out


# -- subcommand bodies: return (results, passed) -----------------------------

def _cmd_check(args):
    a, s, x, meta = _pair_from_args(args)
    try:
        verdict = condition_holds(s, x, samples=args.samples, seed=args.seed,
                                  n_max=args.n_max)
    except ValueError as e:
        raise ConfigError(str(e))
    results = dict(meta)
    results["condition"] = verdict.as_dict()
    results["s_dim"] = s.dim
    return results, verdict.holds


def _cmd_verify(args):
    if not args.s_file:
        raise ConfigError("verify requires --s with a subspace file")
    args.pair = None
    return _cmd_check(args)


def _cmd_lemma(args):
    a, s, x, meta = _pair_from_args(args)
    gen = rng.stream(args.seed, rng.STREAM_LEMMA)
    checks = []
    ok = True
    for _ in range(args.samples):
        y = _sample_y(s, gen)
        check = verify_lemma_conclusion(s, x, y, n_max=args.n_max,
                                        m_max=args.m_max)
        checks.append(check.as_dict())
        ok = ok and check.passed
    results = dict(meta)
    results["lemma_checks"] = checks
    results["n_max"] = args.n_max
    results["m_max"] = args.m_max
    return results, ok


def _default_a_grid(dim: int):
    if dim == 1:
        return [(1,), (2,), (-1,), (3,), (-2,)]
    if dim == 2:
        return [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]
    grid = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    grid.append(tuple([1] * dim))
    return grid[:5]


def _cmd_roots(args):
    a = _algebra_from_args(args)
    asub = maximal_abelian(a)
    rd = restricted_root_decomposition(a, asub, seed=args.seed)
    rules = verify_commutation_rules(rd)
    results = {
        "space": a.name,
        "datum": rd.as_dict(),
        "rules": rules,
    }
    passed = rules["passed"]
    if args.examples:
        bundles = []
        for lam in rd.positive:
            for coords in _default_a_grid(rd.a.dim):
                x = rd.a.member_from_coordinates(coords)
                bundle = build_root_space_example(rd, lam, x,
                                                  samples=args.samples,
                                                  seed=args.seed)
                bundles.append(bundle.as_dict())
                passed = passed and bundle.passed
        results["examples"] = bundles
    return results, passed


def _cmd_construct(args):
    entry = build_pair(args.space, args.pair)
    x = parse_x_expression(entry.algebra, args.x) if args.x else entry.x_default
    spec = ImmersionSpec(entry.algebra, entry.s, x, truncation=args.truncation,
                         grid=_grid_from_args(args), h=args.h)
    rep = mean_curvature_report(spec, tolerance=args.tolerance,
                                baseline=args.baseline)
    results = {
        "space": entry.space_id,
        "pair": entry.pair_name,
        "curvature": rep.as_dict(),
    }
    if args.distance_law:
        law = distance_law_check(
            spec, [-1.0, -0.5, -0.25, 0.25, 0.5, 1.0],
            [np.full(spec.s.dim, v) for v in (-0.5, 0.0, 0.5)])
        results["distance_law"] = law
    exports = export_point_cloud(rep, csv_path=args.csv, ply_path=args.ply)
    if exports:
        results["exports"] = exports
    passed = rep.passed and (not args.distance_law
                             or results["distance_law"]["passed"])
    return results, passed


def _cmd_bisector(args):
    entry = build_pair(args.space, args.pair)
    grid = GridSpec(t_steps=args.grid_steps, y_steps=args.grid_steps)
    rep = bisector_equidistance_check(entry, r=args.r, grid=grid,
                                      tol=args.tolerance)
    expect_equidistant = args.pair == "complex-hyperplane"
    if expect_equidistant:
        passed = rep["equidistant"]
    else:
        passed = rep["max_delta"] >= 10.0 * args.tolerance
    rep["expected_equidistant"] = expect_equidistant
    return {"bisector": rep}, passed


def _cmd_catalog(args):
    spaces = []
    for sid, pair_names in sorted(list_pairs().items()):
        a = build_space(sid)
        entry = {
            "id": sid,
            "dims": {"g": a.dim, "k": len(a.k_basis), "p": len(a.p_basis)},
            "hermitian": parse_space_id(sid)[0] == "su",
            "pairs": [build_pair(sid, p).as_dict() for p in pair_names],
        }
        spaces.append(entry)
    results = {
        "spaces": spaces,
        "negative_control": {
            "space": "sl3r",
            "s": ["S12"],
            "x": "H1 + S13",
            "note": "violates the extension condition at the first bracket;"
                    " reachable as verify --space sl3r --X bad",
        },
        "unsupported": [
            {"id": "sp21", "reason": "quaternionic hyperbolic space"},
            {"id": "f4-20", "reason": "Cayley hyperbolic plane"},
        ],
    }
    return results, True


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="transvector",
        description="certificates and measurements for minimal extensions "
                    "of reflective submanifolds")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, pair=True, sampled=True):
        p.add_argument("--space", help="catalog space id (su21, su31, so31, sl3r, ...)")
        p.add_argument("--algebra-file", help="algebra definition file instead of --space")
        if pair:
            p.add_argument("--pair", help="catalog pair name")
            p.add_argument("--s", dest="s_file", help="JSON file with s basis vectors")
            p.add_argument("--X", dest="x", help="normal vector expression, e.g. 'P1+2*Q1'")
        if sampled:
            p.add_argument("--samples", type=int, default=64)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write the JSON report here (atomic)")

    p = sub.add_parser("check", help="extension condition on a catalog pair")
    common(p)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("verify", help="extension condition on a custom (s, X)")
    common(p)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=_cmd_verify, samples=16)

    p = sub.add_parser("lemma", help="bracket-chain lemma certificates")
    common(p)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--m-max", type=int, default=4)
    p.set_defaults(func=_cmd_lemma, samples=4)

    p = sub.add_parser("roots", help="restricted root decomposition")
    common(p, pair=False, sampled=True)
    p.add_argument("--examples", action="store_true",
                   help="also certify the root-space examples")
    p.set_defaults(func=_cmd_roots, samples=8)

    p = sub.add_parser("construct", help="build the immersion and measure it")
    common(p, sampled=False)
    p.add_argument("--t-steps", type=int, default=5)
    p.add_argument("--y-steps", type=int, default=5)
    p.add_argument("--t-range", default="-0.75,0.75")
    p.add_argument("--y-range", default="-0.75,0.75")
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--truncation", type=int, default=60)
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.add_argument("--baseline", action="store_true",
                   help="measure the frozen-t slice instead of the extension")
    p.add_argument("--distance-law", action="store_true")
    p.add_argument("--csv", help="export the grid as CSV")
    p.add_argument("--ply", help="export the grid as PLY")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("bisector", help="equidistance of the extension")
    common(p, sampled=False)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--grid-steps", type=int, default=7)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(func=_cmd_bisector)

    p = sub.add_parser("catalog", help="list built-in spaces and pairs")
    p.add_argument("--list", action="store_true", default=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_catalog)

    return ap


def run(argv=None) -> int:
    started = time.perf_counter()
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    out_path = getattr(args, "out", None)
    try:
        results, passed = args.func(args)
        status = 0 if passed else 1
    except ConfigError as e:
        results, passed, status = {"error": str(e), "kind": "config"}, False, 2
    except LemmaFalsified as e:
        results = {"error": str(e), "kind": "lemma-falsified",
                   "detail": getattr(e, "detail", None)}
        passed, status = False, 1
    except NumericalBreakdown as e:
        results, passed, status = {"error": str(e), "kind": "numerical"}, False, 3
    rep = envelope(args.command, _config_echo(args), results, passed, status,
                   started)
    write_report(rep, out_path)
    return status


def main():  # console entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
