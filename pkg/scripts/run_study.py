#!/usr/bin/env python3
"""Reproduce the headline study tables in one run.

Writes four CSV files to the chosen output directory:
  ranges.csv      alpha^2 inseparability/separability boundaries vs xi
  quality.csv     Bell quantity, teleportation fidelity, Werner weight vs xi
  filtering.csv   grid maxima of M after local filtering
  cloners.csv     clone-fidelity spread of both machine readings vs xi
"""

import argparse
import pathlib
import sys

import numpy as np

from entbroadcast.analysis import (
    XI_NONLOCAL_MAX,
    bell_quantity_m,
    filter_search_max_m,
    local_separability_range,
    nonlocal_inseparability_range,
    teleportation_fidelity,
    werner_decompose,
)
from entbroadcast.broadcast import EntangledInput, nonlocal_state
from entbroadcast.cloner import (
    XI_LOWER,
    GramNotPSDError,
    MachineKind,
    make_cloner_parameter,
    universality_report,
)
from entbroadcast.report import emit_rows


def ranges_table(xi_values):
    rows = []
    for xi in xi_values:
        p = make_cloner_parameter(xi)
        row = {"xi": xi, "nonlocal_lo": float("nan"), "nonlocal_hi": float("nan"),
               "local_lo": float("nan"), "local_hi": float("nan")}
        if xi <= XI_NONLOCAL_MAX:
            r = nonlocal_inseparability_range(p)
            row["nonlocal_lo"], row["nonlocal_hi"] = r.lo, r.hi
        if xi <= 0.25:
            r = local_separability_range(p)
            row["local_lo"], row["local_hi"] = r.lo, r.hi
        rows.append(row)
    return rows


def quality_table(xi_values):
    half = EntangledInput.from_alpha_sq(0.5)
    rows = []
    for xi in xi_values:
        p = make_cloner_parameter(xi)
        rho = nonlocal_state(half, p)
        dec = werner_decompose(rho)
        rows.append({
            "xi": xi,
            "bell_m": bell_quantity_m(rho),
            "fidelity": teleportation_fidelity(rho),
            "werner_x": dec.x if dec else float("nan"),
        })
    return rows


def filtering_table(budget):
    cases = [(0.5, XI_LOWER), (0.5, 1 / 6), (0.2, 1 / 6), (0.35, 0.2)]
    rows = []
    for a2, xi in cases:
        res = filter_search_max_m(EntangledInput.from_alpha_sq(a2),
                                  make_cloner_parameter(xi), budget=budget)
        rows.append({"alpha_sq": a2, "xi": xi, "max_m": res["max_m"]})
    return rows


def cloner_table(xi_values, samples):
    rows = []
    for xi in xi_values:
        p = make_cloner_parameter(xi)
        lit = universality_report(p, MachineKind.LITERAL_2D, samples)
        try:
            abs_spread = universality_report(p, MachineKind.ABSTRACT_BH, samples).spread
        except GramNotPSDError:
            abs_spread = float("nan")  # no universal machine exists here
        rows.append({"xi": xi, "literal_spread": lit.spread,
                     "abstract_spread": abs_spread})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="study_out")
    ap.add_argument("--xi-points", type=int, default=25)
    ap.add_argument("--filter-budget", type=int, default=41)
    ap.add_argument("--samples", type=int, default=64)
    args = ap.parse_args(argv)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    xi_values = [float(x) for x in np.linspace(XI_LOWER, 0.5, args.xi_points)]

    emit_rows(ranges_table(xi_values),
              ["xi", "nonlocal_lo", "nonlocal_hi", "local_lo", "local_hi"],
              "csv", str(out / "ranges.csv"))
    emit_rows(quality_table(xi_values), ["xi", "bell_m", "fidelity", "werner_x"],
              "csv", str(out / "quality.csv"))
    emit_rows(filtering_table(args.filter_budget), ["alpha_sq", "xi", "max_m"],
              "csv", str(out / "filtering.csv"))
    emit_rows(cloner_table(xi_values, args.samples),
              ["xi", "literal_spread", "abstract_spread"],
              "csv", str(out / "cloners.csv"))
    print(f"wrote 4 tables to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
