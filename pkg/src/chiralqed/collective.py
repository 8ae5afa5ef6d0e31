"""Polariton operators and the five-state collective basis.

Ordered basis: the shared ground state, the bright and dark single-excitation
superpositions, and the bright and dark double-excitation superpositions,
labeled ("1", "psi", "phi", "xi", "zeta").  The single-excitation pair mixes
|g,1> and |e,0> with weights (u, w); the double-excitation pair mixes |g,2>
and |e,1> with weights (alpha, beta).  The (alpha, beta) choice is a gauge:
physics in the product basis cannot depend on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock_algebra import FockCutoff
from .model import SystemParams, derive

SQRT2 = math.sqrt(2.0)

COLLECTIVE_LABELS = ("1", "psi", "phi", "xi", "zeta")
COLLECTIVE_INDEX = {label: k for k, label in enumerate(COLLECTIVE_LABELS)}

# Product-basis ordering of the five retained states: |g,0>, |g,1>, |g,2>,
# |e,0>, |e,1>.  Their indices in a full space with Fock dimension nf are
# (0, 1, 2, nf, nf + 1).


@dataclass(frozen=True)
class CollectiveAmplitudes:
    """Pure-state amplitudes over the five collective states.

    Field order puts the dark-state pair (c1, c_phi) first; as_vector
    rearranges into the COLLECTIVE_LABELS basis order.
    """

    c1: complex
    c_phi: complex
    c_psi: complex = 0j
    c_xi: complex = 0j
    c_zeta: complex = 0j

    def as_vector(self) -> np.ndarray:
        return np.array(
            [self.c1, self.c_psi, self.c_phi, self.c_xi, self.c_zeta],
            dtype=complex,
        )

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_vector()))


@dataclass(frozen=True)
class CollectiveParams:
    """Superposition weights (u, w) and the double-excitation gauge (alpha, beta)."""

    u: float
    w: float
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if abs(self.u**2 + self.w**2 - 1.0) > 1e-12:
            raise ValueError("u^2 + w^2 must equal 1")
        if abs(self.alpha**2 + self.beta**2 - 1.0) > 1e-12:
            raise ValueError("alpha^2 + beta^2 must equal 1")

    @property
    def eta(self) -> float:
        """Overlap driving the bright double state from the bright single state."""
        return self.alpha * self.u + SQRT2 * self.w * self.beta

    @property
    def sigma(self) -> float:
        """Overlap driving the dark double state from the bright single state."""
        return self.beta * self.u - SQRT2 * self.w * self.alpha


def default_gauge(u: float, w: float) -> CollectiveParams:
    """The gauge with u beta = sqrt(2) w alpha.

    It funnels the bright single state into one double state only (sigma = 0),
    which keeps diagnostics readable; the gauge-independence property guards
    against accidental reliance on it.
    """
    norm = math.hypot(u, SQRT2 * w)
    return CollectiveParams(u=u, w=w, alpha=u / norm, beta=SQRT2 * w / norm)


def from_system(params: SystemParams) -> CollectiveParams:
    """Default-gauge collective weights for a physical parameter set."""
    dp = derive(params)
    return default_gauge(dp.u, dp.w)


def basis_change_matrix(cp: CollectiveParams) -> np.ndarray:
    """Unitary whose columns are the collective states in product coordinates.

    Rows follow the product order |g,0>, |g,1>, |g,2>, |e,0>, |e,1>; columns
    follow COLLECTIVE_LABELS.
    """
    u, w, al, be = cp.u, cp.w, cp.alpha, cp.beta
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, u, w, 0.0, 0.0],
            [0.0, 0.0, 0.0, al, be],
            [0.0, w, -u, 0.0, 0.0],
            [0.0, 0.0, 0.0, be, -al],
        ],
        dtype=complex,
    )


def product_five_ops() -> tuple[np.ndarray, np.ndarray]:
    """Cavity annihilation and atom lowering restricted to the five states."""
    a5 = np.zeros((5, 5), dtype=complex)
    a5[0, 1] = 1.0
    a5[1, 2] = SQRT2
    a5[3, 4] = 1.0
    s5 = np.zeros((5, 5), dtype=complex)
    s5[0, 3] = 1.0
    s5[1, 4] = 1.0
    return a5, s5


def collective_jump_operators(cp: CollectiveParams) -> tuple[np.ndarray, np.ndarray]:
    """Bright (decaying) and dark polariton lowering operators, collective basis.

    The bright operator is u a + w sigma- rotated into the collective basis;
    the dark one is w a - u sigma-.  Only the bright one appears in the
    collective dissipator.
    """
    unitary = basis_change_matrix(cp)
    a5, s5 = product_five_ops()
    bright = unitary.conj().T @ (cp.u * a5 + cp.w * s5) @ unitary
    dark = unitary.conj().T @ (cp.w * a5 - cp.u * s5) @ unitary
    return bright, dark


def collective_rates(cp: CollectiveParams, gamma_chi: float) -> dict[str, float]:
    """Decay rates of the four double-to-single transitions."""
    if gamma_chi < 0:
        raise ValueError("gamma_chi must be nonnegative")
    u, w, al, be = cp.u, cp.w, cp.alpha, cp.beta
    eta, sg = cp.eta, cp.sigma
    return {
        "xi_phi": gamma_chi * (SQRT2 * w * eta - be) ** 2,
        "xi_psi": 2.0 * u * u * gamma_chi * eta * eta,
        "zeta_phi": gamma_chi * (SQRT2 * w * sg + al) ** 2,
        "zeta_psi": 2.0 * u * u * gamma_chi * sg * sg,
    }


def assemble_effective_hamiltonian(
    cp: CollectiveParams,
    g_chi: float,
    delta_s: float,
    delta: float,
    omega_c: float,
    omega_a: float,
    e_field: complex,
) -> np.ndarray:
    """Five-state Hermitian generator in the collective basis.

    g_chi enters as a free coupling here so that values beyond the
    physically reachable bound can be explored; the physical wrapper
    effective_hamiltonian_5 always derives it from the rates.
    """
    bright, dark = collective_jump_operators(cp)
    bright_d = bright.conj().T
    dark_d = dark.conj().T
    u, w = cp.u, cp.w
    shift = (u * u - w * w) * delta
    omega_psi = u * omega_c + w * omega_a
    omega_phi = w * omega_c - u * omega_a

    h = (delta_s - shift) * (dark_d @ dark)
    h = h + (delta_s + shift) * (bright_d @ bright)
    h = h + (2.0 * u * w * delta) * (dark_d @ bright + bright_d @ dark)

    cavity = w * dark + u * bright  # the bare cavity operator, rotated
    pump = complex(e_field)
    pair = cavity @ cavity
    h = h + 0.5j * (pump.conjugate() * pair - pump * pair.conj().T)

    h = h + 1j * (omega_psi * bright + omega_phi * dark)
    h = h - 1j * (omega_psi * bright_d + omega_phi * dark_d)
    h = h + 1j * g_chi * (dark_d @ bright - bright_d @ dark)
    return h


def effective_hamiltonian_5(params: SystemParams, cp: CollectiveParams) -> np.ndarray:
    """Collective-basis Hamiltonian for a physical parameter set."""
    dp = derive(params)
    if abs(cp.u - dp.u) > 1e-12 or abs(cp.w - dp.w) > 1e-12:
        raise ValueError(
            "collective weights (u, w) disagree with the rates in params"
        )
    return assemble_effective_hamiltonian(
        cp,
        g_chi=dp.g_chi,
        delta_s=dp.delta_s,
        delta=dp.delta,
        omega_c=params.omega_c,
        omega_a=params.omega_a,
        e_field=params.e_field,
    )


def product_to_collective(rho5: np.ndarray, cp: CollectiveParams) -> np.ndarray:
    """Rotate a product-basis matrix over the five retained states into the
    collective basis."""
    rho5 = np.asarray(rho5, dtype=complex)
    if rho5.shape != (5, 5):
        raise ValueError(f"expected a 5x5 matrix, got {rho5.shape}")
    unitary = basis_change_matrix(cp)
    return unitary.conj().T @ rho5 @ unitary


def collective_to_product(rho5: np.ndarray, cp: CollectiveParams) -> np.ndarray:
    """Inverse rotation of product_to_collective."""
    rho5 = np.asarray(rho5, dtype=complex)
    if rho5.shape != (5, 5):
        raise ValueError(f"expected a 5x5 matrix, got {rho5.shape}")
    unitary = basis_change_matrix(cp)
    return unitary @ rho5 @ unitary.conj().T


def embedding_isometry(cutoff: FockCutoff) -> np.ndarray:
    """Isometry from the five retained product states into the full space."""
    iso = np.zeros((cutoff.dim, 5), dtype=complex)
    nf = cutoff.fock_dim
    for column, row in enumerate((0, 1, 2, nf, nf + 1)):
        iso[row, column] = 1.0
    return iso


def collective_state_vector(
    label: str, cp: CollectiveParams, cutoff: FockCutoff | None = None
) -> np.ndarray:
    """A collective basis state as a product-space vector.

    With a cutoff the vector lives in the full space; without one it lives in
    the five-state product subspace.
    """
    if label not in COLLECTIVE_INDEX:
        raise ValueError(f"unknown collective label {label!r}")
    col = basis_change_matrix(cp)[:, COLLECTIVE_INDEX[label]]
    if cutoff is None:
        return col
    return embedding_isometry(cutoff) @ col
