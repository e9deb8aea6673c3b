"""State-quality criteria for the broadcast pairs.

PPT separability (numeric and closed-form alpha^2 ranges), the Horodecki
Bell quantity M with and without local diagonal filtering, Werner-form
decomposition, teleportation fidelity, and numeric boundary location by
bisection.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .broadcast import EntangledInput, local_state, nonlocal_state
from .cloner import ClonerParameter
from .linalg import (
    PAULIS,
    hermitian_eigenvalues,
    is_density_operator,
    kron,
    partial_transpose,
    singular_values,
)

PPT_TOL = 1e-10

# Machine-parameter bounds of the closed-form ranges
XI_NONLOCAL_MAX = 0.5 - 0.5 / math.sqrt(3.0)  # radicand of the nonlocal range
XI_LOCAL_MAX = 0.25  # radicand of the local range
XI_BELL_MAX = 0.5 - 2.0 ** (-1.25)  # Bell-violation range exists only below this


class RangeUndefinedError(ValueError):
    """The alpha^2 range's radicand is negative at this xi."""


class NoCrossingError(ValueError):
    """Bisection predicate is constant on the searched half-interval."""


class DegenerateFilterError(ValueError):
    """Filter normalization underflows."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"lo={self.lo} > hi={self.hi}")

    @property
    def width(self):
        return self.hi - self.lo

    def contains(self, x, slack=0.0):
        return self.lo - slack <= x <= self.hi + slack

    def subset_of(self, other, slack=0.0):
        return other.lo - slack <= self.lo and self.hi <= other.hi + slack


@dataclass(frozen=True)
class PptResult:
    separable: bool
    min_pt_eigenvalue: float


@dataclass(frozen=True)
class FilterParams:
    """Diagonal local filter M = diag(m1, m2), P = diag(p1, p2)."""

    m1: float
    m2: float
    p1: float
    p2: float

    def __post_init__(self):
        for name in ("m1", "m2", "p1", "p2"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"filter entry {name}={v} must be positive and finite")


@dataclass(frozen=True)
class WernerDecomposition:
    x: float  # weight of the pure maximally entangled part
    psi: np.ndarray  # the pure 4-vector


def _require_state(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a 4x4 two-qubit density operator")
    if not is_density_operator(rho, trace_tol=1e-9, psd_tol=1e-9):
        raise ValueError("input is not a valid density operator")
    return rho


def ppt_test(rho, tol=PPT_TOL):
    """Peres-Horodecki test; exact separability criterion for two qubits."""
    rho = _require_state(rho)
    pt = partial_transpose(rho, [2, 2], subsystem=1)
    lam = hermitian_eigenvalues(pt)[0]
    return PptResult(separable=bool(lam >= -tol), min_pt_eigenvalue=float(lam))


def nonlocal_inseparability_range(p: ClonerParameter) -> Interval:
    """Closed alpha^2 interval on which the cross-site pair is inseparable."""
    xi, eta = p.xi, p.eta
    radicand = 0.25 - (xi * (1.0 - xi)) ** 2 / eta**4
    if radicand < 0.0:
        raise RangeUndefinedError(
            f"nonlocal range undefined at xi={xi} (above {XI_NONLOCAL_MAX})"
        )
    r = math.sqrt(radicand)
    return Interval(0.5 - r, 0.5 + r)


def local_separability_range(p: ClonerParameter) -> Interval:
    """Closed alpha^2 interval on which the same-site pair is separable."""
    xi, eta = p.xi, p.eta
    radicand = 0.25 - (xi / eta) ** 2
    if radicand < 0.0:
        raise RangeUndefinedError(
            f"local range undefined at xi={xi} (above {XI_LOCAL_MAX})"
        )
    s = math.sqrt(radicand)
    return Interval(0.5 - s, 0.5 + s)


_PAULI_PAIRS = np.array([[kron(si, sj) for sj in PAULIS] for si in PAULIS])


def correlation_tensor(rho):
    """Real 3x3 matrix t_ij = Tr(rho sigma_i x sigma_j)."""
    rho = _require_state(rho)
    t = np.einsum("ijkl,lk->ij", _PAULI_PAIRS, rho)
    if np.max(np.abs(t.imag)) > 1e-12:
        raise ValueError("correlation tensor has non-negligible imaginary part")
    return t.real


def _bell_m_unchecked(rho):
    t = np.einsum("ijkl,lk->ij", _PAULI_PAIRS, rho).real
    ev = np.linalg.eigvalsh(t.T @ t)
    return float(ev[-1] + ev[-2])


def bell_quantity_m(rho):
    """Sum of the two largest eigenvalues of T^T T; CHSH violated iff > 1."""
    t = correlation_tensor(rho)
    ev = np.linalg.eigvalsh(t.T @ t)
    return float(ev[-1] + ev[-2])


def bell_violation_range(p: ClonerParameter) -> Optional[Interval]:
    """Closed-form alpha^2 interval of Bell violation, or None when empty.

    Empty for every xi the cloning machine actually admits; the radicand is
    non-negative only below xi = 1/2 - 2^(-5/4) ~ 0.07955.
    """
    if p.eta**4 <= 0.0:
        return None  # eta = 0: correlations vanish, no violation possible
    radicand = 0.5 - 1.0 / (4.0 * p.eta**4)
    if radicand < 0.0:
        return None
    q = math.sqrt(radicand)
    return Interval(0.5 - q, 0.5 + q)


def gisin_filter(rho, f: FilterParams):
    """(M x P) rho (M x P)^dagger / N with diagonal M, P; N the new trace."""
    rho = _require_state(rho)
    mp = np.diag([f.m1 * f.p1, f.m1 * f.p2, f.m2 * f.p1, f.m2 * f.p2]).astype(complex)
    rho_p = mp @ rho @ mp
    n = float(np.real(np.trace(rho_p)))
    if n <= 1e-300:
        raise DegenerateFilterError(f"filter trace underflow N={n}")
    return rho_p / n


def filter_search_max_m(inp: EntangledInput, p: ClonerParameter, budget=101):
    """Maximize M over a deterministic log grid of filter ratios.

    Only the ratios m1/m2 and p1/p2 matter (overall scales cancel in the
    normalization), so the grid covers (m1/m2, p1/p2) in [1e-3, 1e3]^2 with
    ``budget`` points per axis. Ties break toward the earliest grid point.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rho = nonlocal_state(inp, p)
    if budget == 1:
        ratios = np.array([1.0])
    else:
        ratios = np.logspace(-3.0, 3.0, budget)
    best_m, best_f = -np.inf, None
    for rm in ratios:
        for rp in ratios:
            scale = np.array([rm * rp, rm, rp, 1.0])
            rho_f = rho * np.outer(scale, scale)
            rho_f /= np.trace(rho_f).real
            m = _bell_m_unchecked(rho_f)
            if m > best_m + 1e-15:
                best_m = m
                best_f = FilterParams(m1=rm, m2=1.0, p1=rp, p2=1.0)
    return {"max_m": best_m, "argmax": best_f}


def werner_decompose(rho, tol=1e-8) -> Optional[WernerDecomposition]:
    """Try to write rho as ((1-x)/4) I + x |psi><psi| with psi maximally entangled.

    psi is taken from the top eigenvector; x from its eigenvalue. Returns
    None unless psi's reduced states are both I/2 within tol and the
    reconstruction matches rho entrywise within tol.
    """
    rho = _require_state(rho)
    w, v = np.linalg.eigh(rho)
    lam_max = w[-1]
    x = (4.0 * lam_max - 1.0) / 3.0
    if x < tol:
        # maximally mixed: the pure part carries no weight, any psi works
        psi = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / math.sqrt(2.0)
        recon = np.eye(4) / 4.0
        if np.max(np.abs(rho - recon)) <= tol:
            return WernerDecomposition(x=max(x, 0.0), psi=psi)
        return None
    psi = v[:, -1]
    # maximal entanglement of the pure part
    m = psi.reshape(2, 2)
    for red in (m @ m.conj().T, m.conj().T @ m):
        if np.max(np.abs(red - np.eye(2) / 2.0)) > tol:
            return None
    recon = ((1.0 - x) / 4.0) * np.eye(4) + x * np.outer(psi, psi.conj())
    if np.max(np.abs(rho - recon)) > tol:
        return None
    return WernerDecomposition(x=float(x), psi=psi)


def teleportation_fidelity(rho):
    """Best standard-scheme average fidelity: (1/2)(1 + Tr sqrt(T^T T) / 3)."""
    t = correlation_tensor(rho)
    return 0.5 * (1.0 + np.sum(singular_values(t)) / 3.0)


def boundary_bisect(p: ClonerParameter, predicate, side, tol=1e-10):
    """Locate the alpha^2 where ``predicate`` flips, by bisection.

    ``predicate`` maps alpha^2 to bool and must be true on a single interval
    around alpha^2 = 1/2. ``side`` selects which edge of that interval to
    find: 'lower' searches [0, 1/2], 'upper' searches [1/2, 1].
    """
    if side == "lower":
        out_pt, in_pt = 0.0, 0.5
    elif side == "upper":
        out_pt, in_pt = 1.0, 0.5
    else:
        raise ValueError("side must be 'lower' or 'upper'")
    if not predicate(in_pt):
        raise NoCrossingError(f"predicate false at alpha^2=0.5 for xi={p.xi}")
    if predicate(out_pt):
        raise NoCrossingError(f"predicate true at alpha^2={out_pt} for xi={p.xi}")
    lo, hi = out_pt, in_pt  # lo outside, hi inside
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def nonlocal_inseparable_predicate(p: ClonerParameter):
    """alpha^2 -> True when the cross-site pair fails PPT (is entangled)."""

    def pred(alpha_sq):
        rho = nonlocal_state(EntangledInput.from_alpha_sq(alpha_sq), p)
        # raw eigenvalue sign: bisection needs the exact zero crossing, not
        # the -1e-10 classification threshold
        return ppt_test(rho).min_pt_eigenvalue < 0.0

    return pred


def local_separable_predicate(p: ClonerParameter):
    """alpha^2 -> True when the same-site pair passes PPT (is separable)."""

    def pred(alpha_sq):
        rho = local_state(EntangledInput.from_alpha_sq(alpha_sq), p)
        return ppt_test(rho).min_pt_eigenvalue >= 0.0

    return pred
