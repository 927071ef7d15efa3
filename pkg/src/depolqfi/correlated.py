"""Correlated-state protocol closed forms.

n qubits are prepared jointly (pairwise controlled-Z gates, then Hadamards)
from identical polarization-r inputs; the channel then acts once on each of
the m least significant qubits. The resulting density matrix splits into
2x2 blocks on span{|x>, |N-x>} with N = 2^n - 1, which makes the QFI a
finite combinatorial sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PositivityError, UndefinedGainError
from .protocols import ProtocolParams, QfiReport, lam_pow, sequential_qfi, sqsc_qfi

MAX_CLOSED_FORM_N = 60
BLOCK_EPS = 1e-13


@dataclass(frozen=True)
class CoefficientTable:
    """Diagonal (d_j) and counter-diagonal (c_j) coefficients of the
    prepared state, indexed by the zero-count j of the n-bit string."""

    n: int
    r: float
    d: np.ndarray
    c: np.ndarray


@dataclass(frozen=True)
class BitProfile:
    """Zero-count profile of a basis index: j over all n bits, u over the
    n-m spectator bits, v over the m channel bits."""

    x: int
    j: int
    u: int
    v: int


@dataclass(frozen=True)
class PairedBlockState:
    """Sparse density matrix as blocks x -> (d_x, c_x) on span{|x>, |N-x>}:
    rho = sum_x [d_x (|x><x| + |N-x><N-x|) + i c_x (|x><N-x| - |N-x><x|)].
    """

    n: int
    blocks: dict[int, tuple[float, float]]

    def trace(self) -> float:
        return 2.0 * sum(d for d, _ in self.blocks.values())

    def to_dense(self) -> np.ndarray:
        dim = 2**self.n
        big_n = dim - 1
        rho = np.zeros((dim, dim), dtype=complex)
        for x, (d, c) in self.blocks.items():
            rho[x, x] += d
            rho[big_n - x, big_n - x] += d
            rho[x, big_n - x] += 1j * c
            rho[big_n - x, x] += -1j * c
        return rho


@dataclass(frozen=True)
class GainRecord:
    value: float
    numerator_protocol: str
    denominator_protocol: str
    params: ProtocolParams


def _check_n(n: int) -> None:
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be an integer >= 1, got {n}")
    if n > MAX_CLOSED_FORM_N:
        raise DomainError(f"n = {n} exceeds closed-form cap {MAX_CLOSED_FORM_N}")


def bit_profile(x: int, n: int, m: int) -> BitProfile:
    """Zero counts of x's n-bit string, split at the m least significant bits."""
    if not 0 <= x < 2**n:
        raise DomainError(f"x = {x} out of range for {n} bits")
    if not 1 <= m <= n:
        raise DomainError(f"m = {m} out of range 1..{n}")
    ones_total = bin(x).count("1")
    ones_low = bin(x & ((1 << m) - 1)).count("1")
    v = m - ones_low
    u = (n - m) - (ones_total - ones_low)
    return BitProfile(x=x, j=u + v, u=u, v=v)


def prep_coefficients(n: int, r: float) -> CoefficientTable:
    """Coefficients of the prepared state for n qubits of polarization r."""
    _check_n(n)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    scale = 0.5 ** (n + 1)
    j = np.arange(n + 1)
    plus = (1.0 + r) ** j * (1.0 - r) ** (n - j)
    minus = (1.0 + r) ** (n - j) * (1.0 - r) ** j
    return CoefficientTable(n=n, r=r, d=scale * (plus + minus), c=scale * (plus - minus))


def prepared_state(n: int, r: float) -> PairedBlockState:
    """Paired-block form of the state right after the preparatory circuit."""
    table = prep_coefficients(n, r)
    blocks: dict[int, tuple[float, float]] = {}
    for x in range(2 ** (n - 1)):
        j = n - bin(x).count("1")
        blocks[x] = (float(table.d[j]), float(table.c[j]))
    return PairedBlockState(n=n, blocks=blocks)


def final_counterdiag(j: int, n: int, m: int, r: float, lam: float) -> float:
    """Counter-diagonal coefficient after m channel uses: lambda^m * c_j."""
    if not 0 <= j <= n:
        raise DomainError(f"j = {j} out of range 0..{n}")
    if not 1 <= m <= n:
        raise DomainError(f"m = {m} out of range 1..{n}")
    table = prep_coefficients(n, r)
    return lam_pow(lam, m) * float(table.c[j])


def _diag_sum(u: int, v: int, params: ProtocolParams, weights) -> float:
    """Common kernel of final_diag and its lambda-derivative: sum over the
    number of bit flips k with caller-supplied weights(k) in place of
    q^k p^(m-k)."""
    n, m = params.n, params.m
    if not 1 <= m <= n:
        raise DomainError(f"m = {m} out of range 1..{n}")
    if not 0 <= u <= n - m:
        raise DomainError(f"u = {u} out of range 0..{n - m}")
    if not 0 <= v <= m:
        raise DomainError(f"v = {v} out of range 0..{m}")
    d = prep_coefficients(n, params.r).d
    total = 0.0
    for k in range(m + 1):
        w = weights(k)
        if w == 0.0:
            continue
        inner = 0.0
        for el in range(max(k + v - m, 0), min(k, v) + 1):
            inner += math.comb(v, el) * math.comb(m - v, k - el) * d[u + v + k - 2 * el]
        total += w * inner
    return total


def final_diag(u: int, v: int, params: ProtocolParams) -> float:
    """Diagonal entry of the final state for zero-count profile (u, v)."""
    p, q, m = params.p, params.q, params.m
    return _diag_sum(u, v, params, lambda k: q**k * p ** (m - k))


def final_diag_derivative(u: int, v: int, params: ProtocolParams) -> float:
    """Analytic d/dlambda of final_diag, using dp/dlambda = 1/2 and
    dq/dlambda = -1/2."""
    p, q, m = params.p, params.q, params.m

    def weight(k: int) -> float:
        w = 0.0
        if k < m:
            w += 0.5 * (m - k) * q**k * p ** (m - k - 1)
        if k > 0:
            w -= 0.5 * k * q ** (k - 1) * p ** (m - k)
        return w

    return _diag_sum(u, v, params, weight)


def final_state(params: ProtocolParams) -> PairedBlockState:
    """Paired-block form of the final (post-channel) state."""
    n, m = params.n, params.m
    if m > n:
        raise DomainError(f"correlated protocol requires m <= n, got m={m}, n={n}")
    table = prep_coefficients(n, params.r)
    lm = lam_pow(params.lam, m)
    blocks: dict[int, tuple[float, float]] = {}
    for x in range(2 ** (n - 1)):
        prof = bit_profile(x, n, m)
        blocks[x] = (final_diag(prof.u, prof.v, params), lm * float(table.c[prof.j]))
    return PairedBlockState(n=n, blocks=blocks)


def block_qfi(d: float, c: float, d_dot: float, m: int, lam: float) -> float:
    """QFI contribution of one 2x2 block with prepared counter-diagonal c.

    Eigenvalue form: p_pm = d +/- lambda^m c has derivative
    pdot_pm = d_dot +/- m lambda^(m-1) c, and the block contributes
    pdot^2 / p per branch. A vanishing branch contributes 0 when its
    derivative also vanishes, +inf otherwise.
    """
    lm = lam_pow(lam, m)
    lm1 = lam_pow(lam, m - 1)
    if d < abs(lm * c) - 1e-12:
        raise PositivityError(f"block positivity violated: d={d}, lam^m c={lm * c}")
    total = 0.0
    for sign in (1.0, -1.0):
        p = d + sign * lm * c
        pdot = d_dot + sign * m * lm1 * c
        if p < BLOCK_EPS:
            if abs(pdot) < BLOCK_EPS:
                continue
            return math.inf
        total += pdot * pdot / p
    return total


def block_qfi_rational(d: float, c: float, d_dot: float, m: int, lam: float) -> float:
    """Equivalent rational form of block_qfi; retained as a cross-check,
    valid when both branch eigenvalues are bounded away from zero."""
    lm = lam_pow(lam, m)
    lm1 = lam_pow(lam, m - 1)
    lm2 = lam_pow(lam, 2 * m - 2)
    denom = d * d - lm * lm * c * c
    num = d * (d_dot * d_dot + m * m * lm2 * c * c) - 2.0 * m * lm * lm1 * d_dot * c * c
    return 2.0 * num / denom


def correlated_qfi(params: ProtocolParams) -> QfiReport:
    """Total QFI of the correlated-state protocol (closed form)."""
    n, m, lam = params.n, params.m, params.lam
    _check_n(n)
    if m > n:
        raise DomainError(f"correlated protocol requires m <= n, got m={m}, n={n}")
    table = prep_coefficients(n, params.r)
    total = 0.0
    if m < n:
        for v in range(m + 1):
            for u in range(1, n - m + 1):
                weight = math.comb(n - m - 1, u - 1) * math.comb(m, v)
                h = block_qfi(
                    final_diag(u, v, params),
                    float(table.c[u + v]),
                    final_diag_derivative(u, v, params),
                    m,
                    lam,
                )
                if math.isinf(h):
                    return QfiReport(math.inf, math.inf, "closed_form", params)
                total += weight * h
    else:
        for v in range(1, n + 1):
            weight = math.comb(n - 1, v - 1)
            h = block_qfi(
                final_diag(0, v, params),
                float(table.c[v]),
                final_diag_derivative(0, v, params),
                m,
                lam,
            )
            if math.isinf(h):
                return QfiReport(math.inf, math.inf, "closed_form", params)
            total += weight * h
    return QfiReport(
        value=total, per_channel=total / m, method="closed_form", params=params
    )


def correlated_gain(params: ProtocolParams) -> GainRecord:
    """Per-channel QFI of the correlated protocol over the SQSC baseline."""
    if params.r == 0.0:
        raise UndefinedGainError("gain is 0/0 at r = 0")
    value = correlated_qfi(params).per_channel / sqsc_qfi(params.r, params.lam)
    return GainRecord(
        value=value,
        numerator_protocol="correlated",
        denominator_protocol="sqsc",
        params=params,
    )


def corr_vs_seq_gain(params: ProtocolParams) -> GainRecord:
    """Per-channel QFI of the correlated protocol over the sequential one."""
    if params.r == 0.0:
        raise UndefinedGainError("gain is 0/0 at r = 0")
    seq = sequential_qfi(params.m, params.r, params.lam).per_channel
    if seq == 0.0:
        raise UndefinedGainError(
            "sequential per-channel QFI vanishes (lambda = 0, m >= 2)"
        )
    value = correlated_qfi(params).per_channel / seq
    return GainRecord(
        value=value,
        numerator_protocol="correlated",
        denominator_protocol="sequential",
        params=params,
    )
