"""JSON state files: complex entries stored as ``[re, im]`` pairs.

::

    {"kind": "density", "dims": [2, 2], "data": [[[re, im], ...], ...]}
    {"kind": "pure",    "dims": [2, 2], "data": [[re, im], ...]}
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .linalg import DensityMatrix, DimensionError, ValidationError, as_matrix


class StateFileError(ValueError):
    """A state file could not be parsed or failed validation."""


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def encode_density(rho: DensityMatrix, meta: dict | None = None) -> dict:
    doc = {
        "kind": "density",
        "dims": list(rho.dims),
        "data": [[_pair(z) for z in row] for row in rho.matrix],
    }
    if meta:
        doc["meta"] = meta
    return doc


def encode_pure(psi: np.ndarray, dims: Sequence[int], meta: dict | None = None) -> dict:
    doc = {"kind": "pure", "dims": list(dims), "data": [_pair(z) for z in np.asarray(psi).reshape(-1)]}
    if meta:
        doc["meta"] = meta
    return doc


def dumps(doc: dict) -> str:
    # float repr is the shortest string that round-trips exactly
    return json.dumps(doc, indent=None, separators=(",", ":"), allow_nan=False) + "\n"


def _complex_array(data: Any, what: str) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"{what}: entries must be [re, im] number pairs ({exc})") from None
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise StateFileError(f"{what}: entries must be [re, im] pairs, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise StateFileError(f"{what}: non-finite entry")
    return arr[..., 0] + 1j * arr[..., 1]


def parse(doc: Any) -> tuple[DensityMatrix, np.ndarray | None]:
    """Return the state as a density matrix, plus the vector for pure files."""
    if not isinstance(doc, dict):
        raise StateFileError("state file must be a JSON object")
    kind = doc.get("kind")
    dims = doc.get("dims")
    if kind not in ("density", "pure"):
        raise StateFileError(f"'kind' must be 'density' or 'pure', got {kind!r}")
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and d >= 1 for d in dims):
        raise StateFileError(f"'dims' must be a non-empty list of positive integers, got {dims!r}")
    if "data" not in doc:
        raise StateFileError("missing 'data'")
    n = math.prod(dims)
    z = _complex_array(doc["data"], "data")
    try:
        if kind == "pure":
            if z.shape != (n,):
                raise StateFileError(f"dims product {n} does not match vector length {z.shape}")
            return DensityMatrix.from_pure(z, tuple(dims)), z
        if z.shape != (n, n):
            raise StateFileError(f"dims product {n} does not match matrix shape {z.shape}")
        return DensityMatrix(z, tuple(dims)), None
    except (ValidationError, DimensionError) as exc:
        raise StateFileError(f"invalid state: {exc}") from None


def load(path: str | Path) -> tuple[DensityMatrix, np.ndarray | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"malformed JSON in {path}: {exc}") from None
    return parse(doc)


def load_matrix(path: str | Path) -> np.ndarray:
    """A bare ``[[[re, im], ...], ...]`` matrix, or an object with a ``data`` field."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFileError(f"cannot load matrix from {path}: {exc}") from None
    data = doc["data"] if isinstance(doc, dict) and "data" in doc else doc
    z = _complex_array(data, "observable")
    try:
        return as_matrix(z, "observable")
    except (ValidationError, DimensionError) as exc:
        raise StateFileError(str(exc)) from None
