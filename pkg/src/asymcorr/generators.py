"""Orthogonal Hermitian bases of u(d) and their embedding into composite spaces.

Every basis here is normalised to ``Tr(T_a T_b) = 2 delta_ab``, the usual
Gell-Mann scale (Pauli matrices for d = 2). Together with the 1/4 prefactor
of the asymmetry this is what makes the two-qubit closed forms come out as
``Q = 3/2 C^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import DimensionError, ValidationError, as_observable, embed

NORMALIZATION = 2.0


@dataclass(frozen=True)
class GeneratorBasis:
    dim: int
    elements: tuple[np.ndarray, ...]
    normalization: float = NORMALIZATION

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def gram(self) -> np.ndarray:
        stack = np.array(self.elements)
        return np.einsum("aij,bji->ab", stack, stack).real


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


def gell_mann_basis(d: int) -> GeneratorBasis:
    """Generalised Gell-Mann matrices plus ``sqrt(2/d) I``.

    Order: symmetric off-diagonal pairs, antisymmetric pairs (both for
    ``i < j`` in lexicographic order), the ``d - 1`` diagonal matrices, then
    the scaled identity last. For ``d = 2`` this is ``(X, Y, Z, I)``.
    """
    if d < 1:
        raise DimensionError("dimension must be >= 1")
    sym, anti, diag = [], [], []
    for i in range(d):
        for j in range(i + 1, d):
            s = np.zeros((d, d), dtype=np.complex128)
            s[i, j] = s[j, i] = 1
            sym.append(s)
            a = np.zeros((d, d), dtype=np.complex128)
            a[i, j] = -1j
            a[j, i] = 1j
            anti.append(a)
    for k in range(2, d + 1):
        entries = np.zeros(d)
        entries[: k - 1] = 1
        entries[k - 1] = -(k - 1)
        diag.append(np.sqrt(2.0 / (k * (k - 1))) * np.diag(entries).astype(np.complex128))
    ident = np.sqrt(2.0 / d) * np.eye(d, dtype=np.complex128)
    elements = tuple(_frozen(m) for m in (*sym, *anti, *diag, ident))
    return GeneratorBasis(d, elements)


def pauli_basis() -> GeneratorBasis:
    return gell_mann_basis(2)


def lift(basis, slot: int, dims: Sequence[int]) -> list[np.ndarray]:
    """Embed each basis element on factor ``slot`` of a ``dims`` composite."""
    elements = list(basis)
    dims = tuple(int(d) for d in dims)
    if not 0 <= slot < len(dims):
        raise DimensionError(f"slot {slot} out of range for dims {dims}")
    for t in elements:
        if t.shape != (dims[slot], dims[slot]):
            raise DimensionError(
                f"generator of size {t.shape[0]} does not match factor dim {dims[slot]}"
            )
    return [embed(t, slot, dims) for t in elements]


def rotate_basis(basis: GeneratorBasis, orth, tol: float = 1e-9) -> GeneratorBasis:
    """Recombine ``T'_b = sum_a O_ab T_a`` with a real orthogonal ``O``."""
    o = np.asarray(orth)
    n = len(basis)
    if np.iscomplexobj(o):
        if np.max(np.abs(o.imag)) > tol:
            raise ValidationError("recombination matrix must be real")
        o = o.real
    if o.shape != (n, n):
        raise DimensionError(f"recombination matrix must be {n}x{n}, got {o.shape}")
    dev = float(np.max(np.abs(o.T @ o - np.eye(n))))
    if dev > tol:
        raise ValidationError(f"recombination matrix is not orthogonal (deviation {dev:.3e})")
    stack = np.array(basis.elements)
    rotated = np.einsum("ab,aij->bij", o, stack)
    return GeneratorBasis(basis.dim, tuple(_frozen(m) for m in rotated), basis.normalization)


def as_generator_list(basis) -> list[np.ndarray]:
    """Accept a :class:`GeneratorBasis` or any iterable of Hermitian matrices."""
    if isinstance(basis, GeneratorBasis):
        return list(basis.elements)
    return [as_observable(t, "generator") for t in basis]
