"""Grid sweeps of the broadcast-state quality measures."""

import math
from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    bell_quantity_m,
    ppt_test,
    teleportation_fidelity,
    werner_decompose,
)
from .broadcast import EntangledInput, local_state, nonlocal_state
from .cloner import analysis_parameter, make_cloner_parameter

QUANTITIES = ("pptNonlocal", "pptLocal", "bellM", "fidelity", "wernerX")


class ConfigError(ValueError):
    """Invalid sweep configuration."""


@dataclass(frozen=True)
class SweepConfig:
    xi_grid: tuple
    alpha_sq_grid: tuple
    quantities: tuple
    output_format: str = "csv"
    analysis_only: bool = False
    werner_tol: float = 1e-8

    def __post_init__(self):
        if not self.xi_grid:
            raise ConfigError("xi grid is empty")
        if not self.alpha_sq_grid:
            raise ConfigError("alpha^2 grid is empty")
        if not self.quantities:
            raise ConfigError("no quantities selected")
        for q in self.quantities:
            if q not in QUANTITIES:
                raise ConfigError(f"unknown quantity {q!r}; choose from {QUANTITIES}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.output_format!r}")
        for a2 in self.alpha_sq_grid:
            if not (0.0 <= a2 <= 1.0):
                raise ConfigError(f"alpha^2={a2} outside [0, 1]")


def _evaluate(quantity, inp, p, werner_tol):
    if quantity == "pptNonlocal":
        return ppt_test(nonlocal_state(inp, p)).min_pt_eigenvalue
    if quantity == "pptLocal":
        return ppt_test(local_state(inp, p)).min_pt_eigenvalue
    if quantity == "bellM":
        return bell_quantity_m(nonlocal_state(inp, p))
    if quantity == "fidelity":
        return teleportation_fidelity(nonlocal_state(inp, p))
    if quantity == "wernerX":
        dec = werner_decompose(nonlocal_state(inp, p), tol=werner_tol)
        return dec.x if dec is not None else math.nan
    raise ConfigError(f"unknown quantity {quantity!r}")


def run_sweep(cfg: SweepConfig):
    """One row per (xi, alpha^2, quantity), xi-major then alpha^2 then quantity."""
    make = analysis_parameter if cfg.analysis_only else make_cloner_parameter
    rows = []
    for xi in cfg.xi_grid:
        p = make(float(xi))
        for a2 in cfg.alpha_sq_grid:
            inp = EntangledInput.from_alpha_sq(float(a2))
            for q in cfg.quantities:
                rows.append({
                    "xi": float(xi),
                    "alpha_sq": float(a2),
                    "quantity": q,
                    "value": float(_evaluate(q, inp, p, cfg.werner_tol)),
                })
    return rows


def parse_grid(spec):
    """Parse 'lo:hi:n' into n evenly spaced values (inclusive endpoints)."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid spec {spec!r} is not of the form lo:hi:n")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ConfigError(f"grid spec {spec!r}: {e}") from e
    if n < 1:
        raise ConfigError(f"grid spec {spec!r}: need at least one point")
    if n == 1:
        return (lo,)
    return tuple(np.linspace(lo, hi, n))
