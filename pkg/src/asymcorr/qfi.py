"""Quantum Fisher information for unitary families ``exp(i theta K)``.

Convention::

    F(rho, K) = 1/2 sum_{i != j} (p_i - p_j)^2 / (p_i + p_j) |<i|K|j>|^2

which equals the variance of ``K`` on pure states. This is one quarter of
the ``2 sum ...`` convention common in the metrology literature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import (
    DensityMatrix,
    DimensionError,
    EigenSystem,
    as_density,
    as_observable,
    commutator,
    hermitian_eig,
)

DEGENERACY_FLOOR = 1e-12


@dataclass(frozen=True)
class QfiResult:
    value: float
    skipped_pairs: int = 0

    def __float__(self) -> float:
        return self.value


def spectrum(rho: DensityMatrix) -> EigenSystem:
    """Eigensystem of ``rho`` with eigenvalues clamped to ``[0, 1]``.

    Validation already bounds negativity by ``VALIDATION_TOL``; those values
    are set to zero. The vector is renormalised only if clamping drifted the
    sum by more than 1e-12.
    """
    eig = hermitian_eig(rho.matrix)
    p = np.clip(eig.values, 0.0, 1.0)
    total = p.sum()
    if abs(total - 1.0) > 1e-12:
        p = p / total
    return EigenSystem(p, eig.vectors)


def _pair_weights(p: np.ndarray) -> tuple[np.ndarray, int]:
    s = p[:, None] + p[None, :]
    keep = s >= DEGENERACY_FLOOR
    w = np.zeros_like(s)
    w[keep] = (p[:, None] - p[None, :])[keep] ** 2 / s[keep]
    iu = np.triu_indices(len(p), k=1)
    skipped = int(np.count_nonzero(~keep[iu]))
    return w, skipped


def _check_dims(rho: DensityMatrix, k: np.ndarray) -> None:
    if k.shape != rho.matrix.shape:
        raise DimensionError(f"observable shape {k.shape} does not match state {rho.matrix.shape}")


def _qfi_from_spectrum(eig: EigenSystem, w: np.ndarray, k: np.ndarray) -> float:
    kij = eig.vectors.conj().T @ k @ eig.vectors
    value = 0.5 * float(np.sum(w * np.abs(kij) ** 2))
    assert value >= 0.0
    return value


def qfi(rho, k) -> QfiResult:
    """Quantum Fisher information of ``rho`` for the generator ``k``."""
    rho = as_density(rho)
    k = as_observable(k)
    _check_dims(rho, k)
    eig = spectrum(rho)
    w, skipped = _pair_weights(eig.values)
    return QfiResult(_qfi_from_spectrum(eig, w, k), skipped)


def qfi_batch(rho, basis: Sequence) -> np.ndarray:
    """QFI for every generator in ``basis`` from a single eigendecomposition of ``rho``."""
    rho = as_density(rho)
    ks = [as_observable(k) for k in basis]
    if not ks:
        return np.zeros(0)
    for k in ks:
        _check_dims(rho, k)
    eig = spectrum(rho)
    w, _ = _pair_weights(eig.values)
    return np.array([_qfi_from_spectrum(eig, w, k) for k in ks])


def sld(rho, k) -> np.ndarray:
    """Symmetric logarithmic derivative of ``rho_theta = e^{iK theta} rho e^{-iK theta}`` at 0.

    Solves ``i[K, rho] = (rho L + L rho) / 2`` on the support of ``rho``;
    entries with ``p_i + p_j`` below the degeneracy floor are set to zero.
    """
    rho = as_density(rho)
    k = as_observable(k)
    _check_dims(rho, k)
    eig = spectrum(rho)
    v = eig.vectors
    p = eig.values
    d_rho = v.conj().T @ (1j * commutator(k, rho.matrix)) @ v
    s = p[:, None] + p[None, :]
    lij = np.zeros_like(d_rho)
    keep = s >= DEGENERACY_FLOOR
    lij[keep] = 2 * d_rho[keep] / s[keep]
    out = v @ lij @ v.conj().T
    return (out + out.conj().T) / 2


def sld_qfi(rho, k) -> float:
    """``Tr(rho L^2) / 4``; an independent route to :func:`qfi`."""
    rho = as_density(rho)
    el = sld(rho, k)
    return 0.25 * float(np.real(np.trace(rho.matrix @ el @ el)))


def sld_residual(rho, k) -> float:
    """Max entry of ``(rho L + L rho)/2 - i[K, rho]`` projected onto the support."""
    rho = as_density(rho)
    k = as_observable(k)
    el = sld(rho, k)
    eig = spectrum(rho)
    support = eig.vectors[:, eig.values > DEGENERACY_FLOOR]
    proj = support @ support.conj().T
    resid = (rho.matrix @ el + el @ rho.matrix) / 2 - 1j * commutator(k, rho.matrix)
    return float(np.max(np.abs(proj @ resid @ proj))) if resid.size else 0.0


def variance(rho, k) -> float:
    """``Tr(rho K^2) - Tr(rho K)^2``, clipped at zero."""
    rho = as_density(rho)
    k = as_observable(k)
    _check_dims(rho, k)
    m = rho.matrix
    mean = np.real(np.trace(m @ k))
    second = np.real(np.trace(m @ k @ k))
    return max(0.0, float(second - mean * mean))


def is_commuting(rho, k, tol: float = 1e-8) -> bool:
    rho = as_density(rho)
    return float(np.linalg.norm(commutator(rho.matrix, as_observable(k)))) <= tol

