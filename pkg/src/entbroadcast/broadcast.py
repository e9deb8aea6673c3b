"""Two-qubit states produced by locally cloning each half of an entangled pair.

Closed forms of the local (same-site clone pair) and nonlocal (cross-site
pair) density operators, valid for any machine parameter, plus a full
state-vector oracle that builds the global 256-dimensional pure state
(two clones and a 4-dimensional machine per site) and obtains the same
matrices by partial tracing. The oracle requires the abstract machine, so
it is only defined for xi >= 1/6.
"""

import math
from dataclasses import dataclass

import numpy as np

from .cloner import ClonerParameter, MachineKind, machine_isometry
from .linalg import partial_trace


@dataclass(frozen=True)
class EntangledInput:
    """Input pair alpha|00> + beta|11>, with alpha, beta >= 0.

    Negative beta only flips the sign of the coherence term, which no
    criterion in this package is sensitive to, so the sign is canonicalized
    away.
    """

    alpha: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0 + 1e-15):
            raise ValueError(f"alpha={self.alpha} outside [0, 1]")

    @property
    def beta(self):
        return math.sqrt(max(0.0, 1.0 - self.alpha * self.alpha))

    @property
    def alpha_sq(self):
        return self.alpha * self.alpha

    @classmethod
    def from_alpha_sq(cls, alpha_sq):
        if not (0.0 <= alpha_sq <= 1.0):
            raise ValueError(f"alpha^2={alpha_sq} outside [0, 1]")
        return cls(math.sqrt(alpha_sq))


@dataclass(frozen=True)
class BroadcastOutputs:
    local_state: np.ndarray  # rho of a clone pair at one site
    nonlocal_state: np.ndarray  # rho of a cross-site pair


def nonlocal_state(inp: EntangledInput, p: ClonerParameter):
    """Cross-site pair state: X-form with diagonal (A, C, C, B), coherence D.

    A = alpha^2 (1-2xi) + xi^2, B = beta^2 (1-2xi) + xi^2, C = xi(1-xi),
    D = alpha beta (1-2xi)^2 between |00> and |11>.
    """
    a, b = inp.alpha, inp.beta
    xi, eta = p.xi, p.eta
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = a * a * eta + xi * xi
    rho[3, 3] = b * b * eta + xi * xi
    rho[1, 1] = rho[2, 2] = xi * (1.0 - xi)
    d = a * b * eta * eta
    rho[0, 3] = rho[3, 0] = d
    return rho


def local_state(inp: EntangledInput, p: ClonerParameter):
    """Same-site clone pair: (1-2xi)(a^2 |00><00| + b^2 |11><11|) + 2xi |+><+|."""
    a, b = inp.alpha, inp.beta
    xi, eta = p.xi, p.eta
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = a * a * eta
    rho[3, 3] = b * b * eta
    rho[1, 1] = rho[2, 2] = xi  # 2 xi |+><+| spread over |01>, |10>
    rho[1, 2] = rho[2, 1] = xi
    return rho


def global_broadcast_vector(inp: EntangledInput, p: ClonerParameter):
    """Global pure state on factors (a1, b1, m1, a2, b2, m2), dims (2,2,4,2,2,4)."""
    v = machine_isometry(p, MachineKind.ABSTRACT_BH)  # 16x2, raises GramNotPSD below 1/6
    psi = inp.alpha * np.kron(v[:, 0], v[:, 0]) + inp.beta * np.kron(v[:, 1], v[:, 1])
    return psi


ORACLE_DIMS = [2, 2, 4, 2, 2, 4]


def oracle_broadcast(inp: EntangledInput, p: ClonerParameter):
    """Broadcast outputs obtained by brute-force partial tracing of the global state.

    Independent of the closed forms above; agreement with them is the test.
    """
    psi = global_broadcast_vector(inp, p)
    rho = np.outer(psi, psi.conj())
    local = partial_trace(rho, ORACLE_DIMS, keep=[0, 1])  # (a1, b1)
    nonlocal_ = partial_trace(rho, ORACLE_DIMS, keep=[0, 4])  # (a1, b2)
    return BroadcastOutputs(local_state=local, nonlocal_state=nonlocal_)


def oracle_all_pairs(inp: EntangledInput, p: ClonerParameter):
    """All four pair reductions, keyed by factor names, for symmetry checks."""
    psi = global_broadcast_vector(inp, p)
    rho = np.outer(psi, psi.conj())
    # partial_trace keeps factors in ascending index order; the a2b1 pair
    # comes out as (b1, a2) and needs a qubit swap to read as (a2, b1).
    swap = np.zeros((4, 4))
    swap[0, 0] = swap[3, 3] = swap[1, 2] = swap[2, 1] = 1.0
    b1a2 = partial_trace(rho, ORACLE_DIMS, keep=[1, 3])
    return {
        "a1b1": partial_trace(rho, ORACLE_DIMS, keep=[0, 1]),
        "a2b2": partial_trace(rho, ORACLE_DIMS, keep=[3, 4]),
        "a1b2": partial_trace(rho, ORACLE_DIMS, keep=[0, 4]),
        "a2b1": swap @ b1a2 @ swap,
    }
