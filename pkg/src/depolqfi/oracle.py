"""Brute-force density-matrix oracle for the correlated-state protocol.

Builds the full 2^n x 2^n pipeline (product input, preparatory circuit,
per-qubit channel), differentiates it exactly in lambda, and evaluates the
QFI spectrally. Used to verify every closed form in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlated import correlated_qfi, final_state
from .errors import CapacityError, DomainError
from .linalg import (
    HADAMARD,
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    dim_cap,
    hermitian_eig,
)
from .protocols import ProtocolParams

QFI_EIG_EPS = 1e-12
QFI_ELEM_EPS = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    params: ProtocolParams
    closed_form_qfi: float
    oracle_qfi: float
    abs_err: float
    rel_err: float
    max_state_entry_err: float
    symmetry_err: float
    tolerance: float
    state_tolerance: float
    pass_: bool


def _check_capacity(n: int) -> None:
    if 2**n > dim_cap():
        raise CapacityError(f"dimension 2**{n} exceeds cap {dim_cap()}")


def _single_qubit_op(op: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Embed a 2x2 operator on the given qubit (qubit 1 = least significant)."""
    left = np.eye(2 ** (n - qubit), dtype=complex)
    right = np.eye(2 ** (qubit - 1), dtype=complex)
    return np.kron(np.kron(left, op), right)


def initial_product_state(n: int, r: float) -> np.ndarray:
    """n-fold tensor power of (I + r sigma_y)/2."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    _check_capacity(n)
    single = (I2 + r * SIGMA_Y) / 2.0
    rho = single
    for _ in range(n - 1):
        rho = np.kron(rho, single)
    return rho


def prep_unitary(n: int) -> np.ndarray:
    """Preparatory circuit: controlled-Z on every distinct qubit pair,
    then a Hadamard on every qubit."""
    _check_capacity(n)
    dim = 2**n
    # CZ product is diagonal with sign (-1)^(number of 1-bit pairs)
    signs = np.array(
        [(-1.0) ** math.comb(bin(x).count("1"), 2) for x in range(dim)]
    )
    had = HADAMARD
    for _ in range(n - 1):
        had = np.kron(had, HADAMARD)
    return had * signs[np.newaxis, :]


def apply_uprep(rho: np.ndarray, n: int) -> np.ndarray:
    u = prep_unitary(n)
    return u @ rho @ u.conj().T


def _pauli_mix(rho: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """(I/2 tensor Tr_qubit rho) embedded at the qubit's slot, computed as
    the Pauli twirl (rho + X rho X + Y rho Y + Z rho Z)/4."""
    out = rho.copy()
    for pauli in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        op = _single_qubit_op(pauli, qubit, n)
        out = out + op @ rho @ op
    return out / 4.0


def apply_depolarizing(rho: np.ndarray, qubit: int, lam: float, n: int) -> np.ndarray:
    """One depolarizing-channel invocation on the given qubit."""
    if not 1 <= qubit <= n:
        raise DomainError(f"qubit {qubit} out of range 1..{n}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    return lam * rho + (1.0 - lam) * _pauli_mix(rho, qubit, n)


def _depolarizing_derivative(rho: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """d/dlambda of one channel invocation: rho - (I/2 tensor Tr_qubit rho)."""
    return rho - _pauli_mix(rho, qubit, n)


def channel_derivative(rho_i: np.ndarray, m: int, lam: float, n: int) -> np.ndarray:
    """Exact d rho_f / d lambda with the channel acting once on each of
    qubits 1..m, by the product rule over invocations."""
    if not 1 <= m <= n:
        raise DomainError(f"m = {m} out of range 1..{n}")
    total = np.zeros_like(rho_i)
    for k in range(1, m + 1):
        term = rho_i
        for qubit in range(1, m + 1):
            if qubit == k:
                term = _depolarizing_derivative(term, qubit, n)
            else:
                term = apply_depolarizing(term, qubit, lam, n)
        total = total + term
    return total


def spectral_qfi(rho: np.ndarray, drho: np.ndarray) -> float:
    """QFI from the eigenbasis matrix-element form
    H = sum_{j,k} 2 |<phi_j| drho |phi_k>|^2 / (p_j + p_k)."""
    if rho.shape != drho.shape:
        raise DomainError(f"shape mismatch: {rho.shape} vs {drho.shape}")
    spec = hermitian_eig(rho)
    p = spec.eigenvalues
    v = spec.eigenvectors
    elems = v.conj().T @ drho @ v
    psum = p[:, np.newaxis] + p[np.newaxis, :]
    mags = np.abs(elems)
    small = psum < QFI_EIG_EPS
    if np.any(small & (mags >= QFI_ELEM_EPS)):
        return math.inf
    safe = ~small
    return float(np.sum(2.0 * mags[safe] ** 2 / psum[safe]))


def oracle_final_state(params: ProtocolParams) -> tuple[np.ndarray, np.ndarray]:
    """Run the full pipeline; returns (rho_f, d rho_f / d lambda)."""
    n, m, lam = params.n, params.m, params.lam
    if m > n:
        raise DomainError(f"correlated protocol requires m <= n, got m={m}, n={n}")
    _check_capacity(n)
    rho_i = apply_uprep(initial_product_state(n, params.r), n)
    rho_f = rho_i
    for qubit in range(1, m + 1):
        rho_f = apply_depolarizing(rho_f, qubit, lam, n)
    drho = channel_derivative(rho_i, m, lam, n)
    return rho_f, drho


def verify(
    params: ProtocolParams,
    tolerance: float = 1e-8,
    state_tolerance: float = 1e-12,
) -> VerificationReport:
    """Compare the closed-form QFI and reconstructed state against the
    brute-force pipeline."""
    rho_f, drho = oracle_final_state(params)
    oracle_value = spectral_qfi(rho_f, drho)
    closed = correlated_qfi(params).value

    dense_closed = final_state(params).to_dense()
    max_state_err = float(np.max(np.abs(dense_closed - rho_f)))

    diag = np.real(np.diag(rho_f))
    symmetry_err = float(np.max(np.abs(diag - diag[::-1])))

    if math.isinf(closed) and math.isinf(oracle_value):
        abs_err = 0.0
        rel_err = 0.0
    else:
        abs_err = abs(closed - oracle_value)
        # floor keeps the ratio meaningful when both sides vanish (r = 0)
        rel_err = abs_err / max(abs(oracle_value), 1e-12)
    passed = rel_err <= tolerance and max_state_err <= state_tolerance
    return VerificationReport(
        params=params,
        closed_form_qfi=closed,
        oracle_qfi=oracle_value,
        abs_err=abs_err,
        rel_err=rel_err,
        max_state_entry_err=max_state_err,
        symmetry_err=symmetry_err,
        tolerance=tolerance,
        state_tolerance=state_tolerance,
        pass_=passed,
    )
