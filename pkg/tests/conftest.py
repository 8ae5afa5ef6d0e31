"""Shared helpers for the test suite.

``cascade_liouvillian`` is an independent reference construction of the
master-equation generator.  It works from the jump-operator form (one
collective decay channel plus a coherent bright/dark coupling) and builds
every operator from scratch with plain numpy, so it shares no code path
with ``chiralqed.model.build_liouvillian``, which assembles the same
generator out of local and directional cross dissipators.  Agreement
between the two is therefore a real cross-check, not a tautology.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from chiralqed.model import SystemParams


def _destroy(n_levels: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, n_levels)), k=1).astype(complex)


def cascade_liouvillian(params: SystemParams, n_max: int) -> np.ndarray:
    """Reference generator at the default placement (x_phase = 0).

    -i [H + i g (a+ s - s+ a), rho] + Gamma D[u a + w s] rho
    with u^2 = kappa / (kappa + gamma), w^2 = gamma / (kappa + gamma),
    g = (1 - chi) sqrt(kappa gamma) / 2 and Gamma = (1 + chi)(kappa + gamma).
    """
    nf = n_max + 1
    a_op = np.kron(np.eye(2, dtype=complex), _destroy(nf))
    sm = np.zeros((2, 2), dtype=complex)
    sm[0, 1] = 1.0
    s_op = np.kron(sm, np.eye(nf, dtype=complex))
    ad = a_op.conj().T
    sp = s_op.conj().T

    e = params.e_field
    h = params.delta_c * (ad @ a_op) + params.delta_a * (sp @ s_op)
    h = h + 0.5j * (np.conj(e) * (a_op @ a_op) - e * (ad @ ad))
    h = h + 1j * (params.omega_c * (a_op - ad) + params.omega_a * (s_op - sp))

    g_coh = 0.5 * (1.0 - params.chi) * math.sqrt(params.kappa * params.gamma)
    h = h + 1j * g_coh * (ad @ s_op - sp @ a_op)

    total = params.kappa + params.gamma
    u = math.sqrt(params.kappa / total)
    w = math.sqrt(params.gamma / total)
    jump = u * a_op + w * s_op
    rate = (1.0 + params.chi) * total

    dim = 2 * nf
    ident = np.eye(dim, dtype=complex)
    lv = -1j * (np.kron(ident, h) - np.kron(h.T, ident))
    jdj = jump.conj().T @ jump
    lv += rate * (
        np.kron(jump.conj(), jump)
        - 0.5 * np.kron(ident, jdj)
        - 0.5 * np.kron(jdj.T, ident)
    )
    return lv


def project_liouvillian_to_block(lv_full, cp, cutoff) -> np.ndarray:
    """Restrict a product-space generator to the retained five-state block.

    The result lives in the collective basis, so it is directly comparable
    to a generator assembled from the five-state effective model.  The
    embedding is an isometry on vectorized matrices, which makes this a
    genuine compression (amplitudes leaving the block are discarded, the
    same truncation the five-state model makes).
    """
    from chiralqed import collective as coll

    iso = coll.embedding_isometry(cutoff)
    unitary = coll.basis_change_matrix(cp)
    embed = np.kron(iso.conj(), iso)
    block_product = embed.conj().T @ lv_full @ embed
    to_coll = np.kron(unitary.T, unitary.conj().T)
    from_coll = np.kron(unitary.conj(), unitary)
    return to_coll @ block_product @ from_coll


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random full-rank density matrix (Hermitian, unit trace, positive)."""
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return m + m.conj().T


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)


@pytest.fixture
def dark_point() -> SystemParams:
    """Weak-drive operating point where the pair pump cancels both leakage paths."""
    return SystemParams(
        kappa=1.0,
        gamma=1.0,
        chi=0.0,
        omega_c=0.01,
        omega_a=0.01,
        e_mag=4e-4,
        phi_d=0.0,
    )
