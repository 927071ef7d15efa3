"""Dense complex linear algebra for multi-qubit density matrices.

Bit convention, used everywhere in this package: qubit 1 is the least
significant bit, so a basis index x reads x_n ... x_1 with qubit n leftmost.
Matrices are square numpy arrays of complex128; operators on n qubits have
dimension 2**n.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, NumericError

DEFAULT_DIM_CAP = 2**12
HERMITIAN_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def dim_cap() -> int:
    """Current dense dimension cap; override with env var DEPOLQFI_MAX_DIM."""
    raw = os.environ.get("DEPOLQFI_MAX_DIM")
    if raw is None:
        return DEFAULT_DIM_CAP
    cap = int(raw)
    if cap < 2:
        raise DomainError(f"DEPOLQFI_MAX_DIM must be >= 2, got {cap}")
    return cap


def _check_square(a: np.ndarray, name: str = "matrix") -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"{name} must be square, got shape {a.shape}")
    return a.shape[0]


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product; the right factor is the less significant one."""
    da = _check_square(a, "left factor")
    db = _check_square(b, "right factor")
    if da * db > dim_cap():
        raise CapacityError(
            f"kron would produce dimension {da * db} > cap {dim_cap()}"
        )
    return np.kron(a, b)


def _qubit_axes(rho: np.ndarray, qubit_index: int, n: int) -> tuple[int, int]:
    dim = _check_square(rho, "rho")
    if dim != 2**n:
        raise DomainError(f"rho has dimension {dim}, expected 2**{n}")
    if not 1 <= qubit_index <= n:
        raise DomainError(f"qubit_index {qubit_index} out of range 1..{n}")
    # axis 0 is the most significant row bit (qubit n)
    return n - qubit_index, 2 * n - qubit_index


def partial_trace(rho: np.ndarray, qubit_index: int, n: int) -> np.ndarray:
    """Trace out one qubit, returning a 2**(n-1) dimensional matrix."""
    row_ax, col_ax = _qubit_axes(rho, qubit_index, n)
    t = rho.reshape([2] * (2 * n))
    t = np.trace(t, axis1=row_ax, axis2=col_ax)
    d = 2 ** (n - 1)
    return t.reshape(d, d)


def partial_transpose(rho: np.ndarray, qubit_index: int, n: int) -> np.ndarray:
    """Transpose the chosen qubit's indices only."""
    row_ax, col_ax = _qubit_axes(rho, qubit_index, n)
    t = rho.reshape([2] * (2 * n))
    t = np.swapaxes(t, row_ax, col_ax)
    d = 2**n
    return t.reshape(d, d)


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors[:, k] is the
    orthonormal eigenvector for eigenvalues[k].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(a: np.ndarray) -> Spectrum:
    """Eigendecomposition of a Hermitian-flagged matrix."""
    _check_square(a, "matrix")
    if not is_hermitian(a):
        raise DomainError("matrix is not Hermitian within tolerance 1e-12")
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        residual = float(np.max(np.abs(a - a.conj().T)))
        raise NumericError(
            f"eigensolver failed to converge (asymmetry residual {residual:g})"
        ) from exc
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)
