"""Dense complex linear algebra used throughout the package.

Density matrices carry their tensor-factor dimensions so that partial traces
and generator lifting never need the caller to repeat them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

# Tolerances are one decade apart: construction noise, reconstruction,
# comparison against an independent oracle.
VALIDATION_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9
ORACLE_TOL = 1e-8

MAX_ENTRIES = 1 << 24

SIDES = {"a": 0, "b": 1}


class ValidationError(ValueError):
    """An input failed a numerical validity check."""


class DimensionError(ValueError):
    """Operand shapes or subsystem dimensions are incompatible."""


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a finite complex 2-d array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    return arr


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def as_observable(m, name: str = "observable", tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a square Hermitian matrix and return it as an array."""
    arr = as_matrix(m, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    dev = hermiticity_error(arr)
    if dev > tol:
        raise ValidationError(f"{name} is not Hermitian: max |M - M^dagger| = {dev:.3e}")
    return arr


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density operator on a tensor product of ``dims`` factors."""

    matrix: np.ndarray
    dims: tuple[int, ...] = field(default=())

    def __post_init__(self):
        m = as_observable(self.matrix, "density matrix")
        dims = tuple(int(d) for d in self.dims) if self.dims else (m.shape[0],)
        if any(d < 1 for d in dims) or int(np.prod(dims)) != m.shape[0]:
            raise DimensionError(f"dims {dims} do not multiply to matrix size {m.shape[0]}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > VALIDATION_TOL:
            raise ValidationError(f"trace is {tr!r}, expected 1")
        low = float(np.linalg.eigvalsh(m)[0])
        if low < -VALIDATION_TOL:
            raise ValidationError(f"smallest eigenvalue {low:.3e} is below -{VALIDATION_TOL:g}")
        object.__setattr__(self, "matrix", _readonly(m))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, psi, dims: Sequence[int] = ()) -> "DensityMatrix":
        v = _unit_vector(psi)
        return cls(np.outer(v, v.conj()), tuple(dims))

    @classmethod
    def maximally_mixed(cls, dims: Sequence[int]) -> "DensityMatrix":
        n = int(np.prod(dims))
        return cls(np.eye(n) / n, tuple(dims))

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def with_dims(self, dims: Sequence[int]) -> "DensityMatrix":
        return DensityMatrix(self.matrix, tuple(dims))


def as_density(rho, dims: Sequence[int] | None = None) -> DensityMatrix:
    """Coerce ``rho`` to a :class:`DensityMatrix`, optionally re-partitioning it."""
    if isinstance(rho, DensityMatrix):
        if dims is None or tuple(dims) == rho.dims:
            return rho
        return rho.with_dims(dims)
    return DensityMatrix(rho, tuple(dims) if dims is not None else ())


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    # first component with non-negligible magnitude made real positive
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        mags = np.abs(col)
        idx = int(np.argmax(mags > 1e-12 * max(mags.max(), 1e-300)))
        if mags[idx] > 0:
            out[:, k] = col * (abs(col[idx]) / col[idx])
    return out


def hermitian_eig(m) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are ascending. Each eigenvector has its first nonzero
    component real and positive, so repeated runs give identical output.
    """
    if isinstance(m, DensityMatrix):
        m = m.matrix
    arr = as_observable(m)
    values, vectors = np.linalg.eigh(arr)
    return EigenSystem(values, _fix_phases(vectors))


def kron(*mats) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    if not mats:
        raise DimensionError("kron needs at least one operand")
    arrs = [as_matrix(m, "kron operand") for m in mats]
    rows = int(np.prod([a.shape[0] for a in arrs]))
    cols = int(np.prod([a.shape[1] for a in arrs]))
    if rows * cols > MAX_ENTRIES:
        raise DimensionError(f"kron result {rows}x{cols} exceeds {MAX_ENTRIES} entries")
    out = arrs[0]
    for a in arrs[1:]:
        out = np.kron(out, a)
    return out


def partial_trace_array(m: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every factor not listed in ``keep``; kept factors stay in order."""
    dims = tuple(int(d) for d in dims)
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if not keep or any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"invalid subsystem indices {keep} for {n} factors")
    if int(np.prod(dims)) != m.shape[0]:
        raise DimensionError(f"dims {dims} do not match matrix size {m.shape[0]}")
    t = m.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # trace highest index first so lower axis positions stay valid
    for removed, i in enumerate(sorted(traced, reverse=True)):
        cur = n - removed
        t = np.trace(t, axis1=i, axis2=i + cur)
    kd = int(np.prod([dims[k] for k in keep]))
    return t.reshape(kd, kd)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the factors in ``keep``."""
    rho = as_density(rho)
    if len(rho.dims) < 2:
        raise DimensionError("partial trace needs at least two tensor factors")
    keep = sorted(set(int(k) for k in keep))
    out = partial_trace_array(rho.matrix, rho.dims, keep)
    return DensityMatrix(out, tuple(rho.dims[k] for k in keep))


def _unit_vector(psi, tol: float = 1e-8) -> np.ndarray:
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise ValidationError("state vector must be non-empty and finite")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValidationError(f"state vector has norm {norm!r}, expected 1")
    return v


def svd_coefficients(psi, dims: Sequence[int]) -> np.ndarray:
    """Singular values (descending) of the ``d_a x d_b`` coefficient matrix of ``psi``.

    Their squares are the Schmidt coefficients.
    """
    if len(dims) != 2:
        raise DimensionError("svd_coefficients needs exactly two factors")
    da, db = (int(d) for d in dims)
    v = _unit_vector(psi)
    if v.size != da * db:
        raise DimensionError(f"vector length {v.size} != {da}*{db}")
    return np.linalg.svd(v.reshape(da, db), compute_uv=False)


def random_haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix."""
    if d < 1:
        raise DimensionError("d must be >= 1")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return q * phases


def random_pure_state(dims, rng: np.random.Generator) -> np.ndarray:
    n = int(np.prod(np.atleast_1d(dims)))
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_density_matrix(dims, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random state ``G G^dagger / Tr(G G^dagger)`` with ``G`` complex Gaussian, n x rank."""
    dims = tuple(int(d) for d in np.atleast_1d(dims))
    n = int(np.prod(dims))
    rank = n if rank is None else int(rank)
    if not 1 <= rank <= n:
        raise DimensionError(f"rank {rank} outside [1, {n}]")
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityMatrix(m / np.trace(m).real, dims)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random real orthogonal matrix."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def unitary_from_hermitian(k: np.ndarray, theta: float) -> np.ndarray:
    """``exp(i theta K)`` for Hermitian ``K``."""
    w, v = np.linalg.eigh(as_observable(k))
    return (v * np.exp(1j * theta * w)) @ v.conj().T


def trace_distance(a, b) -> float:
    a = a.matrix if isinstance(a, DensityMatrix) else np.asarray(a)
    b = b.matrix if isinstance(b, DensityMatrix) else np.asarray(b)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(a - b))))


def embed(op: np.ndarray, slot: int, dims: Sequence[int]) -> np.ndarray:
    """``I x ... x op x ... x I`` with ``op`` acting on factor ``slot``."""
    dims = tuple(int(d) for d in dims)
    if not 0 <= slot < len(dims):
        raise DimensionError(f"slot {slot} out of range for dims {dims}")
    op = as_matrix(op)
    if op.shape != (dims[slot], dims[slot]):
        raise DimensionError(f"operator shape {op.shape} does not fit factor of dim {dims[slot]}")
    left = int(np.prod(dims[:slot]))
    right = int(np.prod(dims[slot + 1:]))
    return kron(np.eye(left), op, np.eye(right))


def slot_index(side, n: int = 2) -> int:
    """Map ``'a'``/``'b'`` or an integer to a factor index."""
    if isinstance(side, str):
        if side not in SIDES:
            raise DimensionError(f"side must be 'a' or 'b', got {side!r}")
        idx = SIDES[side]
    else:
        idx = int(side)
    if not 0 <= idx < n:
        raise DimensionError(f"side {side!r} out of range for {n} factors")
    return idx
