"""CPTP maps in Kraus form, local application, and the monotonicity harness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import (
    VALIDATION_TOL,
    DensityMatrix,
    DimensionError,
    ValidationError,
    as_density,
    as_matrix,
    embed,
    partial_trace,
    random_haar_unitary,
    slot_index,
)
from .correlation import q_measure
from .qfi import qfi


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple[np.ndarray, ...]
    label: str = "channel"

    def __post_init__(self):
        ops = tuple(as_matrix(k, "Kraus operator") for k in self.operators)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.shape != (d, d):
                raise DimensionError(f"Kraus operators must all be {d}x{d}, got {k.shape}")
        resid = completeness_residual(ops)
        if resid > VALIDATION_TOL:
            raise ValidationError(f"Kraus operators violate completeness by {resid:.3e}")
        frozen = []
        for k in ops:
            k = k.copy()
            k.setflags(write=False)
            frozen.append(k)
        object.__setattr__(self, "operators", tuple(frozen))

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __call__(self, rho) -> DensityMatrix:
        return apply(self, rho)


def completeness_residual(ops: Sequence[np.ndarray]) -> float:
    d = ops[0].shape[0]
    total = sum(k.conj().T @ k for k in ops)
    return float(np.max(np.abs(total - np.eye(d))))


def apply(channel: KrausChannel, rho) -> DensityMatrix:
    rho = as_density(rho)
    if channel.dim != rho.dim:
        raise DimensionError(f"channel dim {channel.dim} != state dim {rho.dim}")
    m = rho.matrix
    out = sum(k @ m @ k.conj().T for k in channel.operators)
    return DensityMatrix((out + out.conj().T) / 2, rho.dims)


def apply_local(channel: KrausChannel, side, rho_ab, dims: Sequence[int] | None = None) -> DensityMatrix:
    """Apply ``channel`` to one factor, identity on the rest."""
    rho = as_density(rho_ab, None if dims is None else tuple(dims))
    slot = slot_index(side, len(rho.dims))
    if rho.dims[slot] != channel.dim:
        raise DimensionError(f"channel dim {channel.dim} != factor dim {rho.dims[slot]}")
    lifted = KrausChannel(
        tuple(embed(k, slot, rho.dims) for k in channel.operators),
        f"{channel.label}@{slot}",
    )
    return apply(lifted, rho)


def _check_prob(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {x}")
    return x


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(d),), "identity")


def depolarizing(p: float, d: int = 2) -> KrausChannel:
    """``rho -> (1 - p) rho + p I/d``."""
    p = _check_prob("p", p)
    ops = [np.sqrt(1 - p) * np.eye(d)] if p < 1 else []
    if p > 0:
        for i in range(d):
            for j in range(d):
                e = np.zeros((d, d), dtype=np.complex128)
                e[i, j] = np.sqrt(p / d)
                ops.append(e)
    return KrausChannel(tuple(ops), f"depolarizing({p:g})")


def amplitude_damping(gamma: float) -> KrausChannel:
    g = _check_prob("gamma", gamma)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - g)]], dtype=np.complex128)
    k1 = np.array([[0, np.sqrt(g)], [0, 0]], dtype=np.complex128)
    return KrausChannel((k0, k1), f"amplitude_damping({g:g})")


def phase_damping(gamma: float) -> KrausChannel:
    g = _check_prob("gamma", gamma)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - g)]], dtype=np.complex128)
    k1 = np.array([[0, 0], [0, np.sqrt(g)]], dtype=np.complex128)
    return KrausChannel((k0, k1), f"phase_damping({g:g})")


def unitary_channel(u) -> KrausChannel:
    u = as_matrix(u, "unitary")
    dev = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if dev > 1e-9:
        raise ValidationError(f"matrix is not unitary (deviation {dev:.3e})")
    return KrausChannel((u,), "unitary")


def random_channel(d: int, rng: np.random.Generator, ancilla_dim: int = 2) -> KrausChannel:
    """Stinespring dilation: Haar unitary on system x ancilla, ancilla starts in |0>.

    ``K_k = (I x <k|) U (I x |0>)``.
    """
    u = random_haar_unitary(d * ancilla_dim, rng).reshape(d, ancilla_dim, d, ancilla_dim)
    ops = tuple(np.ascontiguousarray(u[:, k, :, 0]) for k in range(ancilla_dim))
    return KrausChannel(ops, f"stinespring(d={d},anc={ancilla_dim})")


@dataclass(frozen=True)
class TrialRecord:
    before: float
    after: float

    @property
    def violation(self) -> float:
        return self.after - self.before


def monotonicity_trial(
    rho_ab,
    dims: Sequence[int] | None,
    channel: KrausChannel,
    side="a",
    measure: str = "q_side",
    generator=None,
) -> TrialRecord:
    """Measure on ``side`` before and after ``channel`` acts on the *other* factor.

    ``measure`` is ``"q_side"`` (the one-sided correlation) or ``"qfi"``,
    in which case ``generator`` is a local observable on ``side`` that gets
    lifted with identities.
    """
    rho = as_density(rho_ab, None if dims is None else tuple(dims))
    if len(rho.dims) != 2:
        raise DimensionError("monotonicity trials are bipartite")
    slot = slot_index(side)
    other = 1 - slot
    after_state = apply_local(channel, other, rho)
    if measure == "qfi":
        if generator is None:
            raise ValueError("measure 'qfi' needs a generator")
        k = embed(generator, slot, rho.dims)
        return TrialRecord(qfi(rho, k).value, qfi(after_state, k).value)
    if measure == "q_side":
        return TrialRecord(q_measure(rho).sides[slot], q_measure(after_state).sides[slot])
    raise ValueError(f"unknown measure {measure!r}")


def collective_qfi(rho_ab, dims: Sequence[int] | None, k_a, k_b) -> tuple[float, float]:
    """``F(rho, K_a x I + I x K_b)`` and the marginal sum ``F(rho_a, K_a) + F(rho_b, K_b)``.

    Diagnostic for the direction of QFI (super)additivity; neither direction is
    assumed.
    """
    rho = as_density(rho_ab, None if dims is None else tuple(dims))
    k = embed(k_a, 0, rho.dims) + embed(k_b, 1, rho.dims)
    joint = qfi(rho, k).value
    marg = qfi(partial_trace(rho, [0]), k_a).value + qfi(partial_trace(rho, [1]), k_b).value
    return joint, marg
