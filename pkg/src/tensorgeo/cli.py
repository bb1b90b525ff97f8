"""Command-line front end: measure evaluation, coefficient tables, and the
verification suites, with JSON reports (CSV for coefficient tables).

Exit codes: 0 success / all checks passed, 1 verification failure,
2 usage error, 3 internal error.  The default seed comes from the
TENSORGEO_SEED environment variable when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import coeffs
from .measures import tcm
from .polytope import GeometryError, Polytope, Region, builtin_polytope
from .symtensor import multi_degrees
from .verify import (
    crofton_verify,
    independence_rank,
    kinematic_verify,
    steiner_check,
)

SCHEMA_VERSION = 1


def _default_seed():
    return int(os.environ.get("TENSORGEO_SEED", "0"))


def _load_polytope(args, attr="builtin", file_attr="polytope"):
    name = getattr(args, attr, None)
    path = getattr(args, file_attr, None)
    if name:
        return builtin_polytope(name)
    if path:
        with open(path) as fh:
            return Polytope.from_json(json.load(fh))
    raise SystemExit2("one of --builtin / --polytope is required")


def _load_region(path):
    if not path:
        return None
    with open(path) as fh:
        return Region.from_json(json.load(fh))


class SystemExit2(Exception):
    pass


def _run_config(args, command):
    cfg = {k: v for k, v in sorted(vars(args).items())
           if k != "func" and v is not None}
    cfg["command"] = command
    return cfg


def _emit(report, args, command):
    report = dict(report)
    report["schema_version"] = SCHEMA_VERSION
    report["config"] = _run_config(args, command)
    text = json.dumps(report, indent=2, default=_json_default)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return report


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


# -- subcommands ------------------------------------------------------------

def _cmd_measure(args):
    P = _load_polytope(args)
    region = _load_region(args.region)
    mv = tcm(P, args.j, args.r, args.s, args.l, region=region,
             budget=args.budget, seed=args.seed)
    report = {
        "command": "measure",
        "index": {"j": args.j, "r": args.r, "s": args.s, "l": args.l},
        "tensor": mv.tensor.to_json(),
        "coordinates": [
            {"index": list(b), "value": mv.tensor.coordinate(b),
             "stderr": mv.stderr.coordinate(b)}
            for b in multi_degrees(mv.tensor.dim, mv.tensor.rank)],
        "exact": mv.exact,
        "face_count": mv.face_count,
        "mc_samples": mv.mc_samples,
    }
    _emit(report, args, "measure")
    return 0


def _cmd_coeff(args):
    rows = []
    fam = args.family
    if fam == "d":
        for m in range(args.s // 2 + 1):
            for i in range(m + 1):
                rows.append({"i": i, "m": m,
                             "value": coeffs.d_coeff(args.n, args.j, args.k,
                                                     args.s, args.l, i, m)})
        header = ["i", "m", "value"]
    elif fam == "alpha":
        rows = [{"j": args.j, "k": args.k, "value": coeffs.alpha(args.n, args.j, args.k)}]
        header = ["j", "k", "value"]
    elif fam == "thm31":
        rows = [{"k": args.k, "s": args.s, "value": coeffs.thm31_coeff(args.n, args.k, args.s)}]
        header = ["k", "s", "value"]
    elif fam == "iota":
        rows = [{"m": m, "value": coeffs.iota(args.n, args.k, args.s, m)}
                for m in range(args.s // 2 + 1)]
        header = ["m", "value"]
    elif fam == "lambda":
        rows = [{"m": m, "value": coeffs.lambda_coeff(args.n, args.k, args.s, m)}
                for m in range(args.s // 2 + 2)]
        header = ["m", "value"]
    elif fam == "kappa":
        rows = [{"m": m, "value": coeffs.kappa_coeff(args.n, args.k, args.s, m)}
                for m in range(args.s // 2 + 1)]
        header = ["m", "value"]
    elif fam == "cor38":
        rows = [{"s": args.s, "value": coeffs.cor38_coeff(args.n, args.s)}]
        header = ["s", "value"]
    else:
        raise SystemExit2(f"unknown coefficient family {fam!r}")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header)
    writer.writeheader()
    writer.writerows(rows)
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")
    return 0


def _cmd_crofton(args):
    P = _load_polytope(args)
    region = _load_region(args.region)
    rep = crofton_verify(P, args.k, args.j, args.r, args.s, args.l, region=region,
                         samples=args.samples, seed=args.seed, margin=args.margin,
                         budget=args.budget)
    _emit(rep.to_dict(), args, "crofton-verify")
    return 0 if rep.passed else 1


def _cmd_kinematic(args):
    P = _load_polytope(args)
    P2 = _load_polytope(args, attr="builtin2", file_attr="polytope2")
    if args.rotate2:
        from .flats import random_rotation
        from .rng import stream
        rng = stream(args.rotate2, 0)
        P2 = P2.transformed(random_rotation(rng, P2.dim), rng.random(P2.dim) - 0.5)
    rep = kinematic_verify(P, P2, args.j, args.r, args.s, args.l,
                           samples=args.samples, seed=args.seed,
                           margin=args.margin, budget=args.budget)
    _emit(rep.to_dict(), args, "kinematic-verify")
    return 0 if rep.passed else 1


def _cmd_independence(args):
    rank, count, sv = independence_rank(args.n, args.p, trials=args.trials,
                                        seed=args.seed)
    report = {"command": "independence", "n": args.n, "p": args.p,
              "rank": rank, "expected_count": count,
              "passed": rank == count,
              "singular_values": [float(v) for v in sv[:count]]}
    _emit(report, args, "independence")
    return 0 if rank == count else 1


def _cmd_steiner(args):
    P = _load_polytope(args)
    rep = steiner_check(P, args.eps, samples=args.samples, seed=args.seed)
    passed = all(e <= args.rel_tol for e in rep.rel_error)
    report = dict(rep.to_dict())
    report.update({"command": "steiner-check", "passed": passed,
                   "rel_tol": args.rel_tol})
    _emit(report, args, "steiner-check")
    return 0 if passed else 1


# -- parser -----------------------------------------------------------------

def _add_common(sp, samples_default=100000):
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--samples", type=int, default=samples_default)
    sp.add_argument("--budget", type=int, default=20000,
                    help="Monte-Carlo budget per interior cone moment")
    sp.add_argument("--margin", type=float, default=0.5)
    sp.add_argument("--threads", type=int, default=None,
                    help="cap on worker parallelism (recorded in the report)")
    sp.add_argument("--out", help="write the JSON report here as well")


def _add_polytope_args(sp, second=False):
    sp.add_argument("--builtin", help="named generator, e.g. cube3, simplex2, random3-7")
    sp.add_argument("--polytope", help="JSON polytope file")
    if second:
        sp.add_argument("--builtin2")
        sp.add_argument("--polytope2")
        sp.add_argument("--rotate2", type=int, default=None,
                        help="seed for a random rotation+shift of the second body")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="tensorgeo",
        description="Tensorial curvature measures of polytopes and "
                    "Monte-Carlo verification of their integral-geometric identities.")
    sub = ap.add_subparsers(dest="command")

    sp = sub.add_parser("measure", help="evaluate one tensorial curvature measure")
    _add_polytope_args(sp)
    sp.add_argument("--region", help="JSON region (observation window) file")
    for flag in ("j", "r", "s", "l"):
        sp.add_argument(f"--{flag}", type=int, default=0)
    _add_common(sp)
    sp.set_defaults(func=_cmd_measure)

    sp = sub.add_parser("coeff", help="coefficient tables (CSV)")
    sp.add_argument("family", choices=["d", "alpha", "thm31", "iota", "lambda",
                                       "kappa", "cor38"])
    for flag in ("n", "j", "k", "s", "l"):
        sp.add_argument(f"--{flag}", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_coeff)

    sp = sub.add_parser("crofton-verify", help="verify a Crofton identity by sampling flats")
    _add_polytope_args(sp)
    sp.add_argument("--region")
    for flag in ("k", "j", "r", "s", "l"):
        sp.add_argument(f"--{flag}", type=int, default=0)
    _add_common(sp)
    sp.set_defaults(func=_cmd_crofton)

    sp = sub.add_parser("kinematic-verify", help="verify the kinematic identity by sampling motions")
    _add_polytope_args(sp, second=True)
    for flag in ("j", "r", "s", "l"):
        sp.add_argument(f"--{flag}", type=int, default=0)
    _add_common(sp)
    sp.set_defaults(func=_cmd_kinematic)

    sp = sub.add_parser("independence", help="rank test of the valuation family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--trials", type=int, default=8)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_independence)

    sp = sub.add_parser("steiner-check", help="parallel-volume cross-check")
    _add_polytope_args(sp)
    sp.add_argument("--eps", type=float, nargs="+", default=[0.25, 0.5, 1.0])
    sp.add_argument("--rel-tol", type=float, default=0.005)
    _add_common(sp, samples_default=10 ** 6)
    sp.set_defaults(func=_cmd_steiner)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "func", None):
        ap.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GeometryError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
