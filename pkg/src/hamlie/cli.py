"""Command-line interface.

Exit codes: 0 all checks passed, 1 at least one verification failed,
2 invalid input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .admiso import Admissible
from .bilin import BilinPair, canonicalize, n_invariants
from .divpow import Poly
from .gfield import GF
from .poisson import AlgebraSpec, LieAlg, build_algebra
from .sforms import Form2, builtin_form, is_closed, is_nonalternating, \
    is_nondegenerate
from . import lstruct, report


def _fail(msg: str):
    print(f"hamlie: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _parse_heights(text: str):
    try:
        h = tuple(int(x) for x in text.split(","))
    except ValueError:
        _fail(f"bad heights {text!r}")
    if len(h) != 3:
        _fail("heights must be three comma-separated integers")
    return h


def _load_form(arg: str, K: GF, h) -> Form2:
    if arg.startswith("omega"):
        return builtin_form(arg, K, h)
    with open(arg) as f:
        return Form2.from_json_dict(json.load(f))


def _write(text: str, out: str | None):
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_obj(obj: dict, fmt: str, out: str | None):
    if fmt != "json":
        _fail("this subcommand only supports --format json")
    _write(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


# ---------------------------------------------------------- subcommands

def _cmd_build(args) -> int:
    K = GF(args.field_exp)
    spec = AlgebraSpec(_parse_heights(args.heights), args.form, K, args.variant)
    L = build_algebra(spec)
    d = L.to_json_dict()
    d["spec"] = spec.to_json_dict()
    _emit_obj(d, args.format, args.out)
    return 0


def _cmd_analyze(args) -> int:
    with open(getattr(args, "in")) as f:
        L = LieAlg.from_json_dict(json.load(f))
    checks = args.checks.split(",")
    res: dict = {"dim": L.dim}
    for c in checks:
        if c == "simple":
            res["simple"] = lstruct.is_simple(L, seed=args.seed)
        elif c == "derived":
            dims, _ = lstruct.derived_series(L)
            res["derived_dims"] = dims
        elif c == "center":
            res["center_dim"] = len(lstruct.center(L))
        elif c == "rank-invariant":
            r = lstruct.min_ad_rank(L, args.mode, args.seed)
            res["R"] = r.R
            res["R_exact"] = r.exact
            res["argmin_count"] = len(r.argmin)
        elif c == "normalizer":
            res["normalizer_top_dim"] = len(
                lstruct.normalizer_of_span(L, lstruct.top_line(L)))
        elif c == "grading":
            res["grading"] = {str(k): v
                              for k, v in sorted(lstruct.grading_profile(L).items())}
        else:
            _fail(f"unknown check {c!r}")
    _emit_obj(res, args.format, args.out)
    return 0


def _cmd_classify_bilinear(args) -> int:
    K = GF(args.field_exp)
    h = _parse_heights(args.heights)
    try:
        b = [int(x) for x in args.matrix.split(",")]
    except ValueError:
        _fail(f"bad matrix {args.matrix!r}")
    if len(b) != 6:
        _fail("--matrix needs b11,b12,b13,b22,b23,b33")
    B = ((b[0], b[1], b[2]), (b[1], b[3], b[4]), (b[2], b[4], b[5]))
    p = BilinPair(K, h, B)
    tag, change, hs = canonicalize(p)
    _emit_obj({
        "tag": tag,
        "change": [list(r) for r in change],
        "heights": list(hs),
        "n_invariants": list(n_invariants(p)),
    }, args.format, args.out)
    return 0


_CHECKS = {
    "closed": lambda w: is_closed(w)[0],
    "nondeg": is_nondegenerate,
    "nonalt": is_nonalternating,
}


def _cmd_form(args) -> int:
    K = GF(args.field_exp)
    h = _parse_heights(args.heights)
    w = _load_form(args.form, K, h)
    names = args.check.split(",") if args.check else list(_CHECKS)
    res = {}
    for name in names:
        if name not in _CHECKS:
            _fail(f"unknown check {name!r}")
        res[name] = _CHECKS[name](w)
    _emit_obj({"form": args.form, "heights": list(h), "checks": res},
              args.format, args.out)
    return 0 if all(res.values()) else 1


def _cmd_apply_auto(args) -> int:
    with open(args.auto) as f:
        sigma = Admissible.from_json_dict(json.load(f))
    with open(args.to) as f:
        d = json.load(f)
    if "squares" in d:
        out = sigma.apply_form2(Form2.from_json_dict(d)).to_json_dict()
    elif "terms" in d:
        out = sigma.apply_poly(Poly.from_json_dict(d)).to_json_dict()
    else:
        _fail("--to must be a Poly or Form2 JSON file")
    _emit_obj(out, args.format, args.out)
    return 0


def _cmd_verify(args) -> int:
    rep = report.run_verify(args.suite, args.max_dim, args.seed)
    _write(report.emit(rep, args.format), args.out)
    return 0 if rep["failed"] == 0 else 1


# --------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field-exp", type=int, default=1, metavar="k",
                        help="work over GF(2^k) (default 1)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized certifiers (default 0)")
    common.add_argument("--out", metavar="PATH",
                        help="write output to PATH instead of stdout")
    common.add_argument("--format", choices=("json", "md", "csv"),
                        default="json", help="output format (default json)")

    ap = argparse.ArgumentParser(
        prog="hamlie",
        description="Non-alternating Hamiltonian Lie algebras over GF(2^k)")
    ap.add_argument("--version", action="version", version=f"hamlie {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common],
                       help="build an algebra and emit its structure constants")
    p.add_argument("--heights", required=True, metavar="m1,m2,m3")
    p.add_argument("--form", required=True,
                   help="builtin tag omega1..omega4 or a Form2 JSON file")
    p.add_argument("--variant", choices=("P", "Ptilde", "P1"), default="P")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("analyze", parents=[common],
                       help="run structure checks on a built algebra")
    p.add_argument("--in", required=True, metavar="ALG.json", dest="in")
    p.add_argument("--checks",
                   default="simple,derived,center,rank-invariant",
                   help="comma list: simple,derived,center,rank-invariant,"
                        "normalizer,grading")
    p.add_argument("--mode", choices=("exhaustive", "homogeneous", "sampled"),
                   default="exhaustive", help="rank-invariant sweep mode")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("classify-bilinear", parents=[common],
                       help="canonicalize a flagged symmetric bilinear pair")
    p.add_argument("--heights", required=True, metavar="m1,m2,m3")
    p.add_argument("--matrix", required=True, metavar="b11,b12,b13,b22,b23,b33")
    p.set_defaults(func=_cmd_classify_bilinear)

    p = sub.add_parser("form", parents=[common],
                       help="check properties of a symmetric 2-form")
    p.add_argument("--form", required=True,
                   help="builtin tag omega1..omega4 or a Form2 JSON file")
    p.add_argument("--heights", required=True, metavar="m1,m2,m3")
    p.add_argument("--check", metavar="closed|nondeg|nonalt",
                   help="comma list of checks (default: all)")
    p.set_defaults(func=_cmd_form)

    p = sub.add_parser("apply-auto", parents=[common],
                       help="apply an admissible automorphism to a poly or form")
    p.add_argument("--auto", required=True, metavar="AUTO.json")
    p.add_argument("--to", required=True, metavar="OBJ.json")
    p.set_defaults(func=_cmd_apply_auto)

    p = sub.add_parser("verify", parents=[common],
                       help="run the scenario registry and emit a report")
    p.add_argument("--suite", choices=report.SUITES + ("all",), default="all")
    p.add_argument("--max-dim", type=int, default=63,
                   help="skip scenarios whose algebra dimension exceeds this")
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, OSError, json.JSONDecodeError) as e:
        print(f"hamlie: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
