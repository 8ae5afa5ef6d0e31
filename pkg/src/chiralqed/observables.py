"""Steady-state observables: photon statistics, purity, populations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import collective as coll
from .fock_algebra import BasisLabel, FockCutoff, annihilation, composite_operators, label_to_index

MEAN_PHOTON_FLOOR = 1e-14


def _cavity_number_ops(rho: np.ndarray, cutoff: FockCutoff | None):
    """Pick the cavity operators that match the shape of rho."""
    dim = rho.shape[0]
    if cutoff is not None:
        if dim != cutoff.dim and dim != cutoff.fock_dim:
            raise ValueError(f"cutoff dimension {cutoff.dim} does not match rho ({dim})")
        if dim == cutoff.dim:
            a, _ = composite_operators(cutoff)
        else:
            a = annihilation(cutoff)
        return a
    # No cutoff given: infer.  Even dimension means atom (x) field with
    # fock_dim = dim / 2; a bare field space would have to be passed with an
    # explicit cutoff to disambiguate, except for the 5-state collective case
    # handled by the caller.
    if dim % 2 != 0:
        raise ValueError("cannot infer the cavity layout from an odd dimension; pass cutoff")
    nf = dim // 2
    return np.kron(np.eye(2, dtype=complex), annihilation(nf - 1))


def mean_photon_number(rho: np.ndarray, cutoff: FockCutoff | None = None) -> float:
    rho = np.asarray(rho, dtype=complex)
    a = _cavity_number_ops(rho, cutoff)
    value = np.trace(a.conj().T @ a @ rho)
    return float(value.real)


def g2_zero(rho: np.ndarray, cutoff: FockCutoff | None = None) -> float | None:
    """Equal-time second-order coherence of the cavity mode.

    Returns None when the mean photon number is below MEAN_PHOTON_FLOOR,
    where the ratio stops being numerically meaningful.
    """
    rho = np.asarray(rho, dtype=complex)
    a = _cavity_number_ops(rho, cutoff)
    n_op = a.conj().T @ a
    n_mean = float(np.trace(n_op @ rho).real)
    if n_mean < MEAN_PHOTON_FLOOR:
        return None
    pair = a @ a
    numerator = float(np.trace(pair.conj().T @ pair @ rho).real)
    return numerator / (n_mean * n_mean)


def purity(rho: np.ndarray) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


def population(
    rho: np.ndarray,
    label: BasisLabel | str,
    cp: coll.CollectiveParams | None = None,
) -> float:
    """Population of a product state (BasisLabel) or collective state (str label).

    Collective labels on a full-space rho need cp to build the embedding; on a
    5x5 collective-basis rho they read the diagonal directly.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    if isinstance(label, BasisLabel):
        if dim % 2 != 0:
            raise ValueError("product-state populations need the full atom (x) field space")
        cutoff = FockCutoff(dim // 2 - 1)
        idx = label_to_index(label, cutoff)
        value = rho[idx, idx]
    elif isinstance(label, str):
        if label not in coll.COLLECTIVE_INDEX:
            raise ValueError(f"unknown collective label {label!r}")
        k = coll.COLLECTIVE_INDEX[label]
        if dim == 5:
            # Already in the collective basis.
            value = rho[k, k]
        else:
            if cp is None:
                raise ValueError("collective populations on the full space need cp")
            if dim % 2 != 0:
                raise ValueError("full-space rho must be atom (x) field")
            cutoff = FockCutoff(dim // 2 - 1)
            vec = coll.collective_state_vector(label, cp, cutoff)
            value = vec.conj() @ rho @ vec
    else:
        raise TypeError(f"label must be BasisLabel or str, got {type(label).__name__}")
    value = complex(value)
    if abs(value.imag) > 1e-12:
        raise ValueError(f"population of {label!r} has imaginary part {value.imag:.3e}")
    return float(value.real)


def truncated_cavity_stats(
    rho_coll: np.ndarray, cp: coll.CollectiveParams
) -> tuple[float, float | None]:
    """(mean photon number, g2) for a 5x5 collective-basis state.

    Within the two-excitation subspace a^2 only connects |g,2> to |g,0>, so
    the pair correlator reduces to twice the |g,2> population.
    """
    rho_prod = coll.collective_to_product(np.asarray(rho_coll, dtype=complex), cp)
    a5, _ = coll.product_five_ops()
    n_mean = float(np.trace(a5.conj().T @ a5 @ rho_prod).real)
    pair = 2.0 * float(rho_prod[2, 2].real)
    if n_mean < MEAN_PHOTON_FLOOR:
        return n_mean, None
    return n_mean, pair / (n_mean * n_mean)


@dataclass(frozen=True)
class ObservableSet:
    """One steady-state measurement bundle."""

    mean_n: float
    g2: float | None
    purity: float


def collect(rho: np.ndarray, cutoff: FockCutoff | None = None) -> ObservableSet:
    return ObservableSet(
        mean_n=mean_photon_number(rho, cutoff),
        g2=g2_zero(rho, cutoff),
        purity=purity(rho),
    )
