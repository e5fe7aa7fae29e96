"""Correlations induced by the gap between global and local asymmetry.

For each factor ``x`` of a composite state::

    Q^x = A(rho, L^x lifted) - A(rho^x, L^x)

and ``Q`` is the sum over factors. Closed forms are provided for pure states
(in terms of Schmidt coefficients) and for two-qubit Bell-diagonal states.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .asymmetry import lifted_asymmetry, local_asymmetry, multipartite_asymmetry
from .linalg import (
    DensityMatrix,
    DimensionError,
    ValidationError,
    as_density,
    kron,
    partial_trace,
    svd_coefficients,
)

PAIR_FLOOR = 1e-12
BETA_TOL = 1e-12

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class SchmidtData:
    """Schmidt coefficients, stored in descending order."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        lam = np.asarray(self.coefficients, dtype=float).reshape(-1)
        if lam.size == 0:
            raise ValidationError("need at least one Schmidt coefficient")
        if np.any(lam < -1e-10) or np.any(lam > 1 + 1e-10):
            raise ValidationError(f"Schmidt coefficients must lie in [0, 1], got {lam}")
        if abs(lam.sum() - 1.0) > 1e-10:
            raise ValidationError(f"Schmidt coefficients sum to {lam.sum()!r}, expected 1")
        lam = np.sort(np.clip(lam, 0.0, 1.0))[::-1]
        object.__setattr__(self, "coefficients", tuple(float(x) for x in lam))

    @classmethod
    def from_vector(cls, psi, dims: Sequence[int]) -> "SchmidtData":
        s = svd_coefficients(psi, dims)
        lam = s**2
        return cls(tuple(lam / lam.sum()))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coefficients)


@dataclass(frozen=True)
class CorrelationReport:
    q_total: float
    sides: tuple[float, ...]
    lifted: tuple[float, ...] = ()
    local: tuple[float, ...] = ()

    @property
    def q_side_a(self) -> float:
        return self.sides[0]

    @property
    def q_side_b(self) -> float:
        return self.sides[1]


def multipartite_q(rho, dims: Sequence[int] | None = None) -> CorrelationReport:
    """Per-factor gap between lifted and marginal asymmetry."""
    rho = as_density(rho, None if dims is None else tuple(dims))
    if len(rho.dims) < 2:
        raise DimensionError(f"correlations need at least two factors, got dims {rho.dims}")
    lifted = tuple(lifted_asymmetry(rho, side=i).total for i in range(len(rho.dims)))
    local = tuple(local_asymmetry(rho, side=i).total for i in range(len(rho.dims)))
    sides = tuple(g - m for g, m in zip(lifted, local))
    return CorrelationReport(math.fsum(sides), sides, lifted, local)


def q_measure(rho_ab, dims: Sequence[int] | None = None) -> CorrelationReport:
    """``Q = Q^a + Q^b`` for a bipartite state."""
    rho = as_density(rho_ab, None if dims is None else tuple(dims))
    if len(rho.dims) != 2:
        raise DimensionError(f"q_measure needs exactly two factors, got dims {rho.dims}")
    return multipartite_q(rho)


def product_of_marginals(rho) -> DensityMatrix:
    rho = as_density(rho)
    margs = [partial_trace(rho, [i]).matrix for i in range(len(rho.dims))]
    return DensityMatrix(kron(*margs), rho.dims)


def q_product_form(rho, dims: Sequence[int] | None = None) -> float:
    """``A(rho, L^ab) - A(rho_a x rho_b, L^ab)``, the uncorrelated-reference form of ``Q``."""
    rho = as_density(rho, None if dims is None else tuple(dims))
    return multipartite_asymmetry(rho).total - multipartite_asymmetry(product_of_marginals(rho)).total


def _as_schmidt(schmidt) -> SchmidtData:
    return schmidt if isinstance(schmidt, SchmidtData) else SchmidtData(tuple(schmidt))


def pure_state_q_side(schmidt) -> float:
    """One side's share: ``1/2 sum_{i != j} (2 l_i l_j / (l_i + l_j) + l_i l_j)``."""
    lam = _as_schmidt(schmidt).array
    total = 0.0
    for i, j in itertools.permutations(range(lam.size), 2):
        s = lam[i] + lam[j]
        if s < PAIR_FLOOR:
            continue
        total += 2 * lam[i] * lam[j] / s + lam[i] * lam[j]
    return float(0.5 * total)


def pure_state_q(schmidt) -> float:
    """Closed-form ``Q`` of a pure state from its Schmidt coefficients."""
    return 2 * pure_state_q_side(schmidt)


def q_pure_from_vector(psi, dims: Sequence[int]) -> float:
    return pure_state_q(SchmidtData.from_vector(psi, dims))


def concurrence_pure(schmidt) -> float:
    """``2 sqrt(l_1 l_2)`` for a two-qubit pure state."""
    lam = _as_schmidt(schmidt).array
    if lam.size != 2:
        raise DimensionError(f"pure-state concurrence needs two Schmidt coefficients, got {lam.size}")
    return 2.0 * math.sqrt(lam[0] * lam[1])


def pure_q_bound(d: int) -> float:
    """Maximum of :func:`pure_state_q` when the smaller factor has dimension ``d``.

    Attained by the maximally entangled state, ``l_i = 1/d``, where the closed
    form gives ``(d^2 - 1)/d``. The value ``(d - 1)/d`` that is sometimes
    quoted for this bound is smaller than the closed form already at ``d = 2``
    (0.5 against 1.5) and is not used; see :func:`printed_pure_q_bound`.
    """
    if d < 1:
        raise DimensionError("d must be >= 1")
    return (d * d - 1) / d


def printed_pure_q_bound(d: int) -> float:
    """``(d - 1)/d``; kept only so the discrepancy report can show it."""
    if d < 1:
        raise DimensionError("d must be >= 1")
    return (d - 1) / d


@dataclass(frozen=True)
class BellDiagonalParams:
    """Coefficients of ``rho = I/4 + sum_i c_i sigma_i x sigma_i``.

    The more common ``(I + sum_i t_i sigma_i x sigma_i)/4`` form maps via
    ``t_i = 4 c_i``; use :meth:`from_t`.
    """

    c: tuple[float, float, float]

    def __post_init__(self):
        c = tuple(float(x) for x in self.c)
        if len(c) != 3 or not all(math.isfinite(x) for x in c):
            raise ValidationError(f"need three finite coefficients, got {self.c}")
        object.__setattr__(self, "c", c)
        bad = [(i + 1, b) for i, b in enumerate(self.betas) if b < -BETA_TOL]
        if bad:
            listing = ", ".join(f"beta_{i}={b:.6g}" for i, b in bad)
            raise ValidationError(
                f"invalid Bell-diagonal parameters c={c}: negative eigenvalue(s) {listing}; "
                f"betas={tuple(round(b, 12) for b in self.betas)}"
            )

    @classmethod
    def from_t(cls, t: Sequence[float]) -> "BellDiagonalParams":
        return cls(tuple(x / 4 for x in t))

    @classmethod
    def werner(cls, w: float) -> "BellDiagonalParams":
        """``w |Psi^-><Psi^-| + (1 - w) I/4``, valid for ``-1/3 <= w <= 1``."""
        return cls((-w / 4, -w / 4, -w / 4))

    @property
    def betas(self) -> tuple[float, float, float, float]:
        c1, c2, c3 = self.c
        return (
            0.25 - c1 + c2 + c3,
            0.25 + c1 - c2 + c3,
            0.25 + c1 + c2 - c3,
            0.25 - c1 - c2 - c3,
        )


def _as_params(params) -> BellDiagonalParams:
    return params if isinstance(params, BellDiagonalParams) else BellDiagonalParams(tuple(params))


def bell_diagonal_state(params) -> DensityMatrix:
    params = _as_params(params)
    m = np.eye(4, dtype=np.complex128) / 4
    for ci, name in zip(params.c, "XYZ"):
        m = m + ci * np.kron(PAULI[name], PAULI[name])
    return DensityMatrix(m, (2, 2))


def bell_diagonal_q(params) -> float:
    """``(3 - 4 sum_{i>j} b_i b_j / (b_i + b_j)) / 2`` over the four eigenvalues."""
    beta = np.clip(np.array(_as_params(params).betas), 0.0, None)
    s = 0.0
    for i, j in itertools.combinations(range(4), 2):
        den = beta[i] + beta[j]
        if den < PAIR_FLOOR:
            continue
        s += beta[i] * beta[j] / den
    return 0.5 * (3.0 - 4.0 * s)


def ghz_state(n: int, d: int = 2) -> DensityMatrix:
    """``sum_k |k...k> / sqrt(d)`` on ``n`` factors of dimension ``d``."""
    if n < 2:
        raise DimensionError("GHZ needs at least two factors")
    psi = np.zeros(d**n, dtype=np.complex128)
    stride = sum(d**k for k in range(n))
    psi[[k * stride for k in range(d)]] = 1 / math.sqrt(d)
    return DensityMatrix.from_pure(psi, (d,) * n)


def product_state(*marginals) -> DensityMatrix:
    states = [as_density(m) for m in marginals]
    dims = tuple(itertools.chain.from_iterable(s.dims for s in states))
    return DensityMatrix(kron(*(s.matrix for s in states)), dims)
