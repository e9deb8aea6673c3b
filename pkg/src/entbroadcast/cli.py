"""Command-line front end: sweeps, boundary tables, cloner audits, claims report.

Exit codes: 0 success (all claim verdicts PASS or DISCREPANCY), 1 any FAIL
verdict, 2 usage or configuration error.
"""

import argparse
import sys

from . import analysis, claims as claims_mod
from .analysis import (
    boundary_bisect,
    local_separable_predicate,
    nonlocal_inseparable_predicate,
)
from .cloner import (
    MachineKind,
    OutOfRangeError,
    analysis_parameter,
    make_cloner_parameter,
    universality_report,
)
from .report import CLAIM_FIELDS, SWEEP_FIELDS, claims_to_rows, emit_rows
from .sweep import QUANTITIES, ConfigError, SweepConfig, parse_grid, run_sweep


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="entbroadcast",
        description="Numerical laboratory for entanglement broadcasting with "
                    "tunable universal cloners.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", default="-", help="output path, or - for stdout")
        p.add_argument("--analysis-only", action="store_true",
                       help="permit xi outside the machine's admissible range")

    sp = sub.add_parser("sweep", help="evaluate quantities over an (xi, alpha^2) grid")
    sp.add_argument("--xi", type=float, action="append", default=None)
    sp.add_argument("--xi-grid", help="lo:hi:n")
    sp.add_argument("--alpha-sq", type=float, action="append", default=None)
    sp.add_argument("--alpha-grid", help="alpha^2 grid, lo:hi:n")
    sp.add_argument("--quantity", action="append", choices=list(QUANTITIES),
                    help="repeatable; at least one required")
    sp.add_argument("--tol", type=float, default=1e-8,
                    help="Werner reconstruction tolerance")
    add_common(sp)

    vp = sub.add_parser("verify", help="recompute and check every headline claim")
    vp.add_argument("--filter-budget", type=int, default=101,
                    help="grid points per filter-ratio axis")
    add_common(vp)

    bp = sub.add_parser("boundary", help="bisect a PPT boundary in alpha^2")
    bp.add_argument("--xi", type=float, required=True)
    bp.add_argument("--target", choices=["nonlocal", "local"], default="nonlocal")
    bp.add_argument("--side", choices=["lower", "upper", "both"], default="both")
    bp.add_argument("--tol", type=float, default=1e-10)
    add_common(bp)

    cp = sub.add_parser("clone-audit", help="clone-fidelity universality report")
    cp.add_argument("--xi", type=float, required=True)
    cp.add_argument("--kind", choices=[k.value for k in MachineKind],
                    default=MachineKind.LITERAL_2D.value)
    cp.add_argument("--samples", type=int, default=64)
    add_common(cp)
    return ap


def _param(xi, analysis_only):
    return analysis_parameter(xi) if analysis_only else make_cloner_parameter(xi)


def _cmd_sweep(args):
    xi_grid = tuple(args.xi or ())
    if args.xi_grid:
        xi_grid += parse_grid(args.xi_grid)
    a2_grid = tuple(args.alpha_sq or ())
    if args.alpha_grid:
        a2_grid += parse_grid(args.alpha_grid)
    cfg = SweepConfig(
        xi_grid=xi_grid,
        alpha_sq_grid=a2_grid,
        quantities=tuple(args.quantity or ()),
        output_format=args.format,
        analysis_only=args.analysis_only,
        werner_tol=args.tol,
    )
    rows = run_sweep(cfg)
    emit_rows(rows, SWEEP_FIELDS, args.format, args.out)
    return 0


def _cmd_verify(args):
    results = claims_mod.verify_claims(filter_budget=args.filter_budget)
    for c in results:
        print(f"[{c.verdict}] {c.claim_id}: expected {c.expected:.12g}, "
              f"computed {c.computed:.12g} (tol {c.tolerance:g})", file=sys.stderr)
    discrepancies = [c for c in results if c.verdict == claims_mod.DISCREPANCY]
    if discrepancies:
        print("warning: documented discrepancies between the two machine readings:",
              file=sys.stderr)
        for c in discrepancies:
            print(f"  {c.claim_id}: {c.description}", file=sys.stderr)
    emit_rows(claims_to_rows(results), CLAIM_FIELDS, args.format, args.out)
    return 1 if claims_mod.has_failures(results) else 0


def _cmd_boundary(args):
    p = _param(args.xi, args.analysis_only)
    if args.target == "nonlocal":
        pred = nonlocal_inseparable_predicate(p)
    else:
        pred = local_separable_predicate(p)
    sides = ["lower", "upper"] if args.side == "both" else [args.side]
    rows = []
    for side in sides:
        a2 = boundary_bisect(p, pred, side, tol=args.tol)
        rows.append({"xi": args.xi, "target": args.target, "side": side,
                     "alpha_sq": a2})
    emit_rows(rows, ["xi", "target", "side", "alpha_sq"], args.format, args.out)
    return 0


def _cmd_clone_audit(args):
    p = _param(args.xi, args.analysis_only)
    rep = universality_report(p, MachineKind(args.kind), args.samples)
    rows = [{"xi": args.xi, "kind": args.kind, "samples": args.samples,
             "min_fidelity": rep.min_fidelity, "max_fidelity": rep.max_fidelity,
             "spread": rep.spread}]
    emit_rows(rows, ["xi", "kind", "samples", "min_fidelity", "max_fidelity",
                     "spread"], args.format, args.out)
    return 0


_COMMANDS = {
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "boundary": _cmd_boundary,
    "clone-audit": _cmd_clone_audit,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, OutOfRangeError, analysis.RangeUndefinedError,
            analysis.NoCrossingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
