"""Two-qubit correlation analysis of the correlated-state protocol:
explicit final matrix, PPT separability, and quantum discord."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import hermitian_eig, partial_transpose
from .protocols import lam_pow

PPT_TOL = 1e-12

# Single-qubit rotation bringing the final state into Bell-diagonal-like
# form (I + sum_j c_j sigma_j x sigma_j)/4 without changing the discord.
DISCORD_ROTATION = np.array(
    [[0.0, np.exp(1j * np.pi / 8)], [np.exp(-1j * np.pi / 8), 0.0]]
)


@dataclass(frozen=True)
class DiscordIntermediates:
    """Eigen-quantities mu_0..mu_3 (4x the rotated-state eigenvalues) and
    the dominant correlation coefficient c_corr = lambda^m r."""

    mu0: float
    mu1: float
    mu2: float
    mu3: float
    c_corr: float


@dataclass(frozen=True)
class CorrelationReport:
    m: int
    r: float
    lam: float
    ppt_min_eigenvalue: float
    separable: bool
    separability_threshold_r: float
    discord: float
    discord_initial: float


def _check(m: int, r: float, lam: float) -> None:
    if m < 1 or int(m) != m:
        raise DomainError(f"m must be an integer >= 1, got {m}")
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")


def two_qubit_final_matrix(m: int, r: float, lam: float) -> np.ndarray:
    """Final two-qubit state in the computational basis (n = 2).

    lam = 1 is accepted as a limit evaluation and yields the prepared
    (pre-channel) state.
    """
    _check(m, r, lam)
    lm = lam_pow(lam, m)
    diag_plus = (1.0 + lm * r * r) / 4.0
    diag_minus = (1.0 - lm * r * r) / 4.0
    corner = 2.0 * r * lm / 4.0
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = diag_plus
    rho[1, 1] = rho[2, 2] = diag_minus
    rho[0, 3] = 1j * corner
    rho[3, 0] = -1j * corner
    return rho


def separability_threshold(m: int, lam: float) -> float:
    """Polarization below which the final two-qubit state stays separable:
    sqrt(1 + 1/lambda^m) - 1, clamped to [0, 1]."""
    if lam == 0.0:
        return 1.0
    return min(1.0, max(0.0, math.sqrt(1.0 + 1.0 / lam**m) - 1.0))


def ppt_analysis(m: int, r: float, lam: float) -> tuple[float, bool]:
    """Minimum eigenvalue of the partial transpose and the separable flag."""
    _check(m, r, lam)
    rho = two_qubit_final_matrix(m, r, lam)
    pt = partial_transpose(rho, 1, 2)
    min_eig = float(hermitian_eig(pt).eigenvalues[0])
    return min_eig, min_eig >= -PPT_TOL


def _xlog2x(x: float) -> float:
    """x log2 x with 0 log 0 := 0; clips tiny negative round-off."""
    if x <= 0.0:
        return 0.0
    return x * math.log2(x)


def discord_intermediates(m: int, r: float, lam: float) -> DiscordIntermediates:
    _check(m, r, lam)
    lm = lam_pow(lam, m)
    return DiscordIntermediates(
        mu0=1.0 - lm * r * r,
        mu1=1.0 + 2.0 * r * lm + lm * r * r,
        mu2=1.0 - 2.0 * r * lm + lm * r * r,
        mu3=1.0 - lm * r * r,
        c_corr=lm * r,
    )


def discord(m: int, r: float, lam: float) -> float:
    """Quantum discord of the final two-qubit state, in bits.

    lam = 1 evaluates the pre-channel state and equals discord_initial(r).
    """
    inter = discord_intermediates(m, r, lam)
    c = inter.c_corr
    mu_term = 0.25 * sum(
        _xlog2x(mu) for mu in (inter.mu0, inter.mu1, inter.mu2, inter.mu3)
    )
    binary_term = 0.5 * (_xlog2x(1.0 - c) + _xlog2x(1.0 + c))
    return mu_term - binary_term


def discord_initial(r: float) -> float:
    """Discord of the prepared two-qubit state before any channel use."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    return 0.5 * (_xlog2x(1.0 + r) + _xlog2x(1.0 - r))


def correlation_report(m: int, r: float, lam: float) -> CorrelationReport:
    min_eig, separable = ppt_analysis(m, r, lam)
    return CorrelationReport(
        m=m,
        r=r,
        lam=lam,
        ppt_min_eigenvalue=min_eig,
        separable=separable,
        separability_threshold_r=separability_threshold(m, lam),
        discord=discord(m, r, lam),
        discord_initial=discord_initial(r),
    )
