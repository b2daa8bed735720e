"""Scenario registry and report emission.

Scenarios are data (src/hamlie/scenarios.json), not code: each records a
suite, the inputs, and the expected outcome, so new height tuples are a
manifest edit.  `run_verify` executes a suite and returns a
deterministic report dict; `emit` renders it as json, markdown, or csv.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources

from . import __version__
from .bilin import BilinPair, CANONICAL, brute_force_equivalent, n_invariants, \
    pairs_equivalent
from .divpow import Poly, validate_heights
from .gfield import GF
from .admiso import elimination_automorphism, omega4_scaling, swap_automorphism
from .poisson import AlgebraSpec, build_algebra
from .sforms import Form2, builtin_form, is_closed, is_nonalternating, \
    is_nondegenerate, solve_exact
from . import lstruct

SUITES = ("forms", "bilinear", "algebras", "invariants")


def load_scenarios():
    text = resources.files("hamlie").joinpath("scenarios.json").read_text()
    return json.loads(text)["scenarios"]


def _field(params) -> GF:
    return GF(params.get("field_exp", 1))


def _form_valid(tag: str, h) -> bool:
    try:
        builtin_form(tag, GF(1), h)
    except ValueError:
        return False
    return True


def _heights_upto(total: int):
    for m1 in range(1, total - 1):
        for m2 in range(1, total - m1):
            for m3 in range(1, total - m1 - m2 + 1):
                yield (m1, m2, m3)


# ------------------------------------------------------------ measurers

def _measure_dimension_sweep(params, seed):
    K = _field(params)
    mismatches = []
    count = 0
    for h in _heights_upto(params.get("max_sum", 6)):
        for tag in ("omega1", "omega2", "omega3", "omega4"):
            if not _form_valid(tag, h):
                continue
            L = build_algebra(AlgebraSpec(h, tag, K, "P"))
            count += 1
            expect = (1 << sum(h)) - 1
            if L.dim != expect:
                mismatches.append([tag, list(h), L.dim, expect])
    return {"algebras": count, "mismatches": mismatches}


def _measure_dimension(params, seed):
    K = _field(params)
    L = build_algebra(AlgebraSpec(tuple(params["heights"]), params["form"], K,
                                  params.get("variant", "P")))
    return {"dim": L.dim}


def _measure_simple(params, seed):
    K = _field(params)
    L = build_algebra(AlgebraSpec(tuple(params["heights"]), params["form"], K,
                                  params.get("variant", "P")))
    return {"dim": L.dim,
            "simple": lstruct.is_simple(L, params.get("method", "auto"), seed)}


def _measure_min_rank(params, seed):
    K = _field(params)
    h = tuple(params["heights"])
    L = build_algebra(AlgebraSpec(h, params["form"], K, params.get("variant", "P")))
    res = lstruct.min_ad_rank(L, params.get("mode", "exhaustive"), seed)
    xbar = tuple((1 << m) - 1 for m in h)
    xb = [0] * L.dim
    xb[L.basis.index(xbar)] = 1
    return {
        "R": res.R,
        "argmin_count": len(res.argmin),
        "argmin_is_xbar": list(res.argmin) == [tuple(xb)],
        "argmin_contains_xbar": tuple(xb) in res.argmin,
    }


def _measure_form_predicates(params, seed):
    K = _field(params)
    w = builtin_form(params["form"], K, tuple(params["heights"]))
    closed, _ = is_closed(w)
    return {"closed": closed, "nondegenerate": is_nondegenerate(w),
            "nonalternating": is_nonalternating(w)}


def _general_omega4_family(K, h, c13, c23):
    z = Poly.zero(K, h)
    one = Poly.one(K, h)
    xb1x3 = Poly.monomial(K, h, ((1 << h[0]) - 1, 0, 1))
    xb2x3 = Poly.monomial(K, h, (0, (1 << h[1]) - 1, 1))
    return Form2((z, z, one), (one, xb1x3.scale(c13), xb2x3.scale(c23)))


def _measure_elimination(params, seed):
    K = _field(params)
    h = validate_heights(params["heights"])
    c13, c23 = params["c13"], params["c23"]
    w = _general_omega4_family(K, h, c13, c23)
    sigma = elimination_automorphism(K, h, c13, c23)
    img = sigma.apply_form2(w)
    if h[0] <= h[1]:
        target = _general_omega4_family(K, h, c13, 0)
    else:
        target = _general_omega4_family(K, h, 0, c23)
    residual = img + target
    return {"residual_zero": residual.is_zero(),
            "residual_exact": solve_exact(residual) is not None}


def _measure_scale_omega4(params, seed):
    K = _field(params)
    h = tuple(params["heights"])
    a = params["a"]
    w = builtin_form("omega4", K, h)
    img = omega4_scaling(K, h, a).apply_form2(w)
    return {"equals_a_omega4": (img + w.scale(a)).is_zero()}


def _measure_swap(params, seed):
    K = _field(params)
    h = tuple(params["heights"])
    w = builtin_form(params["form"], K, h)
    sigma = swap_automorphism(K, h)
    img = sigma.apply_form2(w)
    target = builtin_form(params["form"], K, sigma.target)
    return {"swapped_is_builtin": (img + target).is_zero()}


def _all_bilin_matrices():
    import itertools
    for diag in itertools.product(range(2), repeat=3):
        if not any(diag):
            continue
        for off in itertools.product(range(2), repeat=3):
            yield ((diag[0], off[0], off[1]),
                   (off[0], diag[1], off[2]),
                   (off[1], off[2], diag[2]))


def _measure_bilinear_sweep(params, seed):
    import itertools
    K = GF(1)
    hmax = params.get("max_height", 3)
    pairs_checked = 0
    mismatches = 0
    for hts in itertools.product(range(1, hmax + 1), repeat=3):
        ps = []
        for B in _all_bilin_matrices():
            try:
                ps.append(BilinPair(K, hts, B))
            except ValueError:
                continue
        for p in ps:
            for q in ps:
                pairs_checked += 1
                if pairs_equivalent(p, q) != brute_force_equivalent(p, q):
                    mismatches += 1
    return {"pairs": pairs_checked, "mismatches": mismatches}


def _measure_n_invariants(params, seed):
    K = _field(params)
    B = CANONICAL[params["matrix"]]
    p = BilinPair(K, tuple(params["heights"]), B)
    vals = list(n_invariants(p))
    return {"n_invariants": vals, "contains_zero": 0 in vals}


def _measure_gr_consistency(params, seed):
    K = _field(params)
    h = tuple(params["heights"])
    g = lstruct.graded_algebra(build_algebra(AlgebraSpec(h, "omega4", K, "P")))
    w1 = build_algebra(AlgebraSpec(h, "omega1", K, "P"))
    return {"equal": g.basis == w1.basis and g.sc == w1.sc}


def _measure_fingerprints(params, seed):
    import itertools
    K = _field(params)
    h = tuple(params["heights"])
    fps = {}
    for tag in params["forms"]:
        L = build_algebra(AlgebraSpec(h, tag, K, "P"))
        fps[tag] = lstruct.fingerprint(L, seed)
    ok = all(lstruct.fingerprints_distinct(fps[a], fps[b])
             for a, b in itertools.combinations(fps, 2))
    return {"pairwise_distinct": ok}


_MEASURERS = {
    "dimension_sweep": _measure_dimension_sweep,
    "dimension": _measure_dimension,
    "simple": _measure_simple,
    "min_rank": _measure_min_rank,
    "form_predicates": _measure_form_predicates,
    "elimination": _measure_elimination,
    "scale_omega4": _measure_scale_omega4,
    "swap": _measure_swap,
    "bilinear_sweep": _measure_bilinear_sweep,
    "n_invariants": _measure_n_invariants,
    "gr_consistency": _measure_gr_consistency,
    "fingerprints": _measure_fingerprints,
}


def run_scenario(s: dict, seed: int = 0) -> dict:
    measured = _MEASURERS[s["kind"]](s.get("params", {}), seed)
    expect = s["expect"]
    ok = all(measured.get(k) == v for k, v in expect.items())
    return {
        "id": s["id"],
        "description": s["description"],
        "suite": s["suite"],
        "pass": ok,
        "expected": expect,
        "measured": measured,
    }


def run_verify(suite: str = "all", max_dim: int = 63, seed: int = 0) -> dict:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    rows = []
    for s in load_scenarios():
        if suite != "all" and s["suite"] != suite:
            continue
        if s.get("dim", 0) > max_dim:
            continue
        rows.append(run_scenario(s, seed))
    return {
        "header": {
            "tool": "hamlie",
            "version": __version__,
            "suite": suite,
            "max_dim": max_dim,
            "seed": seed,
        },
        "scenarios": rows,
        "passed": sum(1 for r in rows if r["pass"]),
        "failed": sum(1 for r in rows if not r["pass"]),
    }


def emit(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "md":
        h = report["header"]
        lines = [
            f"# hamlie verify report",
            "",
            f"- version: {h['version']}",
            f"- suite: {h['suite']}, max_dim: {h['max_dim']}, seed: {h['seed']}",
            f"- passed: {report['passed']}, failed: {report['failed']}",
            "",
            "| scenario | suite | pass | measured |",
            "|---|---|---|---|",
        ]
        for r in report["scenarios"]:
            measured = json.dumps(r["measured"], sort_keys=True)
            lines.append(
                f"| {r['id']} | {r['suite']} | "
                f"{'pass' if r['pass'] else 'FAIL'} | `{measured}` |"
            )
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["id", "suite", "pass", "expected", "measured"])
        for r in report["scenarios"]:
            w.writerow([r["id"], r["suite"], int(r["pass"]),
                        json.dumps(r["expected"], sort_keys=True),
                        json.dumps(r["measured"], sort_keys=True)])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")
