"""Asymmetry as averaged QFI over a Lie-algebra basis.

``A(rho, L) = 1/4 sum_j F(rho, T_j)``. For composite systems the local
unitary algebra is the direct sum of one u(d) per factor, each lifted into
the full space; its asymmetry splits into one term per factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .generators import as_generator_list, gell_mann_basis, lift
from .linalg import (
    DensityMatrix,
    DimensionError,
    as_density,
    commutator,
    partial_trace,
    random_density_matrix,
    slot_index,
    unitary_from_hermitian,
)
from .qfi import qfi_batch

PREFACTOR = 0.25

@dataclass(frozen=True)
class AsymmetryReport:
    total: float
    per_generator: np.ndarray

    def __float__(self) -> float:
        return self.total


def _report(values: np.ndarray) -> AsymmetryReport:
    values = np.asarray(values, dtype=float)
    values.setflags(write=False)
    return AsymmetryReport(PREFACTOR * float(values.sum()), values)


def _state(rho, dims) -> DensityMatrix:
    return as_density(rho, None if dims is None else tuple(dims))


def asymmetry(rho, basis) -> AsymmetryReport:
    """Asymmetry of ``rho`` for a basis or any list of Hermitian generators."""
    rho = as_density(rho)
    return _report(qfi_batch(rho, as_generator_list(basis)))


def lifted_asymmetry(rho_ab, dims: Sequence[int] | None = None, side="a") -> AsymmetryReport:
    """Asymmetry of the global state for one factor's lifted u(d) basis."""
    rho = _state(rho_ab, dims)
    slot = slot_index(side, len(rho.dims))
    basis = gell_mann_basis(rho.dims[slot])
    return _report(qfi_batch(rho, lift(basis, slot, rho.dims)))


def local_asymmetry(rho_ab, dims: Sequence[int] | None = None, side="a") -> AsymmetryReport:
    """Asymmetry of one marginal for its own u(d) basis."""
    rho = _state(rho_ab, dims)
    slot = slot_index(side, len(rho.dims))
    marginal = partial_trace(rho, [slot])
    return asymmetry(marginal, gell_mann_basis(marginal.dim))


def multipartite_asymmetry(rho, dims: Sequence[int] | None = None) -> AsymmetryReport:
    """Sum of lifted asymmetries over every factor; generators ordered by factor."""
    rho = _state(rho, dims)
    gens = []
    for slot, d in enumerate(rho.dims):
        gens.extend(lift(gell_mann_basis(d), slot, rho.dims))
    return _report(qfi_batch(rho, gens))


def bipartite_asymmetry(rho_ab, dims: Sequence[int] | None = None) -> AsymmetryReport:
    rho = _state(rho_ab, dims)
    if len(rho.dims) != 2:
        raise DimensionError(f"bipartite asymmetry needs two factors, got dims {rho.dims}")
    return multipartite_asymmetry(rho)


def is_symmetric_state(rho, basis, tol: float = 1e-8) -> tuple[bool, float]:
    """Whether ``rho`` commutes with every generator; returns the largest commutator norm."""
    rho = as_density(rho)
    norms = [float(np.linalg.norm(commutator(rho.matrix, t))) for t in as_generator_list(basis)]
    worst = max(norms, default=0.0)
    return worst <= tol, worst


def is_covariant_channel(
    channel,
    basis,
    samples: int = 32,
    tol: float = 1e-9,
    rng: np.random.Generator | None = None,
) -> tuple[bool, float]:
    """Monte-Carlo check of ``E(U rho U^dag) = U E(rho) U^dag`` for ``U = exp(i theta T_j)``.

    Each sample draws a generator, an angle in ``[0, 2 pi)`` and a random
    state; ``theta = pi/2`` is always tried for every generator as well.
    A ``True`` verdict is evidence, not proof.
    """
    from .channels import apply

    rng = np.random.default_rng(0) if rng is None else rng
    gens = as_generator_list(basis)
    d = channel.dim
    for t in gens:
        if t.shape != (d, d):
            raise DimensionError(f"generator size {t.shape[0]} != channel dim {d}")
    trials = [(j, np.pi / 2) for j in range(len(gens))]
    trials += [(int(rng.integers(len(gens))), float(rng.uniform(0, 2 * np.pi))) for _ in range(samples)]
    worst = 0.0
    for j, theta in trials:
        u = unitary_from_hermitian(gens[j], theta)
        rho = random_density_matrix(d, rng)
        rotated = DensityMatrix(u @ rho.matrix @ u.conj().T)
        lhs = apply(channel, rotated).matrix
        rhs = u @ apply(channel, rho).matrix @ u.conj().T
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst <= tol, worst
