"""Independent five-state Lindblad oracle in the collective basis.

Dynamics on {|1>, |psi>, |phi>, |xi>, |zeta>} generated by the effective
Hamiltonian from `collective` plus a single bright-polariton dissipator.
The coupling between the single-excitation pair is a free parameter here,
so regimes beyond the physically reachable bound can be driven directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import collective as coll
from .dynamics import steady_state
from .model import SystemParams, derive, dissipator

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TruncatedParams:
    """Inputs of the five-state model.

    e_tilde is the two-photon pump divided by sqrt(2); the property e_field
    undoes that scaling for builders that want the physical amplitude.
    """

    g_chi: float
    gamma_chi: float
    delta_s: float
    delta: float
    omega_c: float
    omega_a: float
    e_tilde: complex
    cp: coll.CollectiveParams

    def __post_init__(self) -> None:
        if self.gamma_chi < 0:
            raise ValueError("gamma_chi must be nonnegative")

    @property
    def e_field(self) -> complex:
        return SQRT2 * complex(self.e_tilde)


def from_system(
    params: SystemParams, cp: coll.CollectiveParams | None = None
) -> TruncatedParams:
    """Physically reachable truncated parameters for a full parameter set."""
    dp = derive(params)
    if cp is None:
        cp = coll.default_gauge(dp.u, dp.w)
    elif abs(cp.u - dp.u) > 1e-12 or abs(cp.w - dp.w) > 1e-12:
        raise ValueError("cp weights disagree with the rates in params")
    return TruncatedParams(
        g_chi=dp.g_chi,
        gamma_chi=dp.gamma_chi,
        delta_s=dp.delta_s,
        delta=dp.delta,
        omega_c=params.omega_c,
        omega_a=params.omega_a,
        e_tilde=params.e_field / SQRT2,
        cp=cp,
    )


def truncated_hamiltonian(p: TruncatedParams) -> np.ndarray:
    return coll.assemble_effective_hamiltonian(
        p.cp,
        g_chi=p.g_chi,
        delta_s=p.delta_s,
        delta=p.delta,
        omega_c=p.omega_c,
        omega_a=p.omega_a,
        e_field=p.e_field,
    )


def bright_operator(p: TruncatedParams) -> np.ndarray:
    bright, _ = coll.collective_jump_operators(p.cp)
    return bright


def truncated_liouvillian(p: TruncatedParams) -> np.ndarray:
    """25x25 generator acting on column-stacked 5x5 density matrices."""
    h = truncated_hamiltonian(p)
    ident = np.eye(5, dtype=complex)
    lv = -1j * (np.kron(ident, h) - np.kron(h.T, ident))
    return lv + dissipator(bright_operator(p), p.gamma_chi)


def truncated_rhs(rho: np.ndarray, p: TruncatedParams) -> np.ndarray:
    """Time derivative of a 5x5 collective-basis density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (5, 5):
        raise ValueError(f"expected a 5x5 density matrix, got {rho.shape}")
    h = truncated_hamiltonian(p)
    bright = bright_operator(p)
    bright_d = bright.conj().T
    sink = bright_d @ bright
    out = -1j * (h @ rho - rho @ h)
    out = out + p.gamma_chi * (bright @ rho @ bright_d)
    out = out - 0.5 * p.gamma_chi * (sink @ rho + rho @ sink)
    return out


def truncated_steady(p: TruncatedParams) -> np.ndarray:
    """Steady state of the five-state model.

    Raises DegenerateSteadyStateError from `dynamics` when the null space is
    not one dimensional (e.g. no coupling and no drive, where the dark single
    state never empties).
    """
    return steady_state(truncated_liouvillian(p))
