"""Command-line front end: ``ppt-forge <command> [flags]``.

Output is JSON on stdout unless ``--pretty`` is given.  Infinite values are
written as the string ``"inf"``.  Exit codes: 0 success, 1 computation error,
2 usage error; with ``--exit-verdict`` a verdict maps Feasible/Infeasible/
Boundary to 0/3/4.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import catalysis, closed_form, feasibility, lab, ppt_sdp, spectra
from .spectra import SchmidtVector, parse_vector

VERDICT_EXIT = {feasibility.FEASIBLE: 0, feasibility.INFEASIBLE: 3, feasibility.BOUNDARY: 4}


class UsageError(Exception):
    pass


def jsonable(obj):
    """Plain JSON types; non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def _vector(text: str) -> SchmidtVector:
    try:
        return parse_vector(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _order(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _rank(text: str) -> int:
    try:
        K = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"K must be an integer, got {text!r}") from None
    if K < 2:
        raise argparse.ArgumentTypeError(f"K must be >= 2, got {K}")
    return K


def _int_range(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = (int(p) for p in text.split("-", 1))
            return list(range(lo, hi + 1))
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a-b' or 'a,b,...', got {text!r}") from None


# --- commands ---------------------------------------------------------------------

def cmd_entropy(args):
    return {"lambda": list(args.lam.coeffs), "t": args.t,
            "S": spectra.renyi_entropy(args.lam, args.t)}


def cmd_monotones(args):
    doc = spectra.ppt_monotone_report(args.lam).as_dict()
    doc["lambda"] = list(args.lam.coeffs)
    return doc


def _verdict_doc(v: feasibility.Verdict, args):
    if args.pretty:
        return feasibility.explain(v)
    doc = v.to_json()
    doc["trace"] = [{"rule": r, "note": m} for r, m in v.trace]
    return doc


def cmd_locc(args):
    v = feasibility.decide(feasibility.TransformQuery(args.source, args.target, "LOCC"))
    return _verdict_doc(v, args), v.decision


def cmd_ppt(args):
    if (args.K is None) == (args.source is None):
        raise UsageError("ppt needs exactly one of --K or --source")
    src = feasibility.MaxEnt(args.K) if args.K is not None else args.source
    v = feasibility.decide(feasibility.TransformQuery(src, args.target, "PPT"),
                           max_sdp_dim=args.max_dim)
    return _verdict_doc(v, args), v.decision


def cmd_t_value(args):
    lam = args.lam.nonzero()
    if len(lam) > args.max_dim:
        raise ValueError(f"SDP dimension {len(lam)} exceeds solver guard {args.max_dim}")
    cert = ppt_sdp.solve(ppt_sdp.build_reduced(lam, args.K))
    lo, hi = ppt_sdp.bounds(lam, args.K)
    doc = cert.to_json()
    doc["bounds"] = [lo, hi]
    if args.oracle:
        doc["oracle_T"] = ppt_sdp.solve_full_oracle(lam, args.K)
    return doc


def cmd_t1(args):
    lam = args.lam.nonzero()
    res = closed_form.face_search(lam, args.K)
    return {"lambda": list(lam.coeffs), "K": args.K, "T1": res.t1_value,
            "c_star": res.c_star, "x": res.x_point, "delta": res.delta_value}


def cmd_dual_point(args):
    lam = args.lam.nonzero()
    mu, t = closed_form.rank1_dual_point(lam, args.K)
    red = ppt_sdp.build_reduced(lam, args.K)
    return {"lambda": list(lam.coeffs), "K": args.K,
            "mu": ppt_sdp.table_to_list(mu, strict=False),
            "t": ppt_sdp.table_to_list(t, strict=True),
            "dual_value": ppt_sdp.dual_objective(red, mu, t),
            "dual_violation": ppt_sdp.dual_violation(red, mu, t)}


def cmd_catalysis(args):
    if args.screen is not None:
        if args.source is None:
            raise UsageError("--screen needs --source and --target")
        if args.screen == "locc":
            res = catalysis.locc_catalysis_screen(args.source, args.target)
        else:
            res = catalysis.ppt_catalysis_conjecture_screen(args.source, args.target)
        return res.to_json()
    if args.K is None:
        raise UsageError("catalysis needs --K (or --screen with --source)")
    query = catalysis.CatalysisQuery(args.K, args.target, args.c_max)
    return catalysis.catalyst_scan(query, max_sdp_dim=args.max_dim).to_json()


def cmd_min_catalyst(args):
    query = catalysis.CatalysisQuery(args.K, args.target, args.c_max)
    report = catalysis.catalyst_scan(query, max_sdp_dim=args.max_dim)
    return {"K": args.K, "target": list(args.target.coeffs), "c_max": args.c_max,
            "possible": report.possible, "minimal_C": report.minimal_C,
            "certain": report.certain}


def cmd_sweep(args):
    records, summary = lab.conjecture_sweep(args.n, args.d_range, args.K_range,
                                            seed=args.seed, jobs=args.jobs)
    if args.csv:
        lab.emit_sweep_csv(records, args.csv)
    if args.summary:
        lab.emit_sweep_summary(summary, args.summary)
    return summary.to_json()


def cmd_region(args):
    samples = lab.region_sample(args.resolution, args.mode)
    if args.csv:
        lab.emit_region_csv(samples, args.csv)
    if args.svg:
        lab.emit_region_svg(samples, args.svg)
    return {"resolution": args.resolution, "mode": args.mode, "n": len(samples),
            "counts": lab.region_counts(samples)}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")

    p = argparse.ArgumentParser(prog="ppt-forge",
                                description="Pure-state entanglement conversion under PPT and LOCC")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    def guard(sp):
        sp.add_argument("--max-dim", type=int, default=feasibility.SDP_GUARD_DIM,
                        help="largest Schmidt rank handed to the SDP solver")

    sp = add("entropy", cmd_entropy, "Renyi entropy S_t in bits")
    sp.add_argument("--lambda", dest="lam", type=_vector, required=True)
    sp.add_argument("--t", type=_order, required=True, help="order t >= 0 or 'inf'")

    sp = add("monotones", cmd_monotones, "PPT entanglement cost/distillation values")
    sp.add_argument("--lambda", dest="lam", type=_vector, required=True)

    sp = add("locc", cmd_locc, "decide source -> target under LOCC (majorization)")
    sp.add_argument("--source", type=_vector, required=True)
    sp.add_argument("--target", type=_vector, required=True)
    sp.add_argument("--exit-verdict", action="store_true")

    sp = add("ppt", cmd_ppt, "decide Phi_K -> target under PPT")
    sp.add_argument("--K", type=_rank)
    sp.add_argument("--source", type=_vector, help="uniform source vector instead of --K")
    sp.add_argument("--target", type=_vector, required=True)
    sp.add_argument("--exit-verdict", action="store_true")
    guard(sp)

    sp = add("t-value", cmd_t_value, "solve the reduced SDP for T(K; lambda)")
    sp.add_argument("--K", type=_rank, required=True)
    sp.add_argument("--lambda", dest="lam", type=_vector, required=True)
    sp.add_argument("--oracle", action="store_true",
                    help="also solve the unreduced program (dimension guard PPT_FORGE_GUARD_DIM)")
    guard(sp)

    sp = add("t1", cmd_t1, "closed-form rank-one dual value T1(K; lambda)")
    sp.add_argument("--K", type=_rank, required=True)
    sp.add_argument("--lambda", dest="lam", type=_vector, required=True)

    sp = add("dual-point", cmd_dual_point, "rank-one dual certificate attaining T1")
    sp.add_argument("--K", type=_rank, required=True)
    sp.add_argument("--lambda", dest="lam", type=_vector, required=True)

    sp = add("catalysis", cmd_catalysis,
             "scan maximally entangled catalysts, or screen a catalytic LOCC/PPT pair")
    sp.add_argument("--K", type=_rank)
    sp.add_argument("--target", type=_vector, required=True)
    sp.add_argument("--c-max", type=int, default=64)
    sp.add_argument("--source", type=_vector)
    sp.add_argument("--screen", choices=("locc", "conjecture"))
    guard(sp)

    sp = add("min-catalyst", cmd_min_catalyst, "smallest catalyst rank C that works")
    sp.add_argument("--K", type=_rank, required=True)
    sp.add_argument("--target", type=_vector, required=True)
    sp.add_argument("--c-max", type=int, default=64)
    guard(sp)

    sp = add("sweep", cmd_sweep, "random comparison of T and T1")
    sp.add_argument("--n", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--d-range", type=_int_range, default=list(range(3, 7)))
    sp.add_argument("--K-range", type=_int_range, default=list(range(2, 7)))
    sp.add_argument("--csv", help="write per-instance records here")
    sp.add_argument("--summary", help="write the summary JSON here")

    sp = add("region", cmd_region, "classify the rank-3 cell reachable from one EPR pair")
    sp.add_argument("--resolution", type=int, default=100)
    sp.add_argument("--mode", choices=("Direct", "Catalytic"), default="Catalytic")
    sp.add_argument("--csv")
    sp.add_argument("--svg")
    return p


def _render(doc, pretty: bool) -> str:
    if isinstance(doc, str):
        return doc
    doc = jsonable(doc)
    if not pretty:
        return json.dumps(doc)
    lines = []
    for k, v in doc.items():
        lines.append(f"{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        out = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ppt-forge {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"ppt-forge {args.command}: {exc}", file=sys.stderr)
        return 1
    decision = None
    if isinstance(out, tuple):
        out, decision = out
    print(_render(out, args.pretty))
    if decision is not None and getattr(args, "exit_verdict", False):
        return VERDICT_EXIT[decision]
    return 0


run = main

if __name__ == "__main__":
    sys.exit(main())
