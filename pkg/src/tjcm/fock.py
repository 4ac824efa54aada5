"""Special functions and the superposed displaced number state.

The field starts in ``lam * [D(alpha) + eps * D(-alpha)] |m>``.  All matrix
elements are built from a normalised Laguerre kernel so that nothing is ever
formed from raw factorials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

__all__ = [
    "CutoffError",
    "SdnParams",
    "FieldState",
    "log_factorial",
    "assoc_laguerre",
    "laguerre_kernel",
    "iter_laguerre_kernel",
    "displacement_element",
    "displacement_column",
    "sdn_normalization",
    "default_cutoff",
    "build_sdn_state",
    "photon_distribution",
    "mean_photon",
]

# Missing probability tolerated when the Fock basis is truncated.
NORM_TOL = 1e-10
# Tail mass allowed in the top 2k levels of a field state.
TAIL_TOL = 1e-12

_RESCALE = 1e100


class CutoffError(ValueError):
    """The Fock cutoff is too small for the requested state or evolution."""


def log_factorial(n: int) -> float:
    """Return ``ln(n!)``."""
    if n < 0:
        raise ValueError(f"log_factorial needs n >= 0, got {n}")
    if n < 2:
        return 0.0
    if n < 1024:
        # exact integer, correctly rounded log
        return math.log(math.factorial(n))
    return math.lgamma(n + 1)


def falling_ratio(n: int, k: int) -> float:
    """``(n + k)! / n!`` as a float, exact up to the final rounding."""
    try:
        return float(math.perm(n + k, k))
    except OverflowError:
        return math.exp(log_factorial(n + k) - log_factorial(n))


def assoc_laguerre(n: int, a: float, x):
    """Generalised Laguerre polynomial ``L_n^a(x)`` by upward recurrence.

    Negative integer ``a`` is accepted as long as ``a >= -n``.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if a < -n:
        raise ValueError(f"upper index a={a} is below -n={-n}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + a - x) * cur - (j + a) * prev) / (j + 1)
    return cur if cur.ndim else float(cur)


def iter_laguerre_kernel(nmax: int, d: int, x) -> Iterator[np.ndarray]:
    """Yield ``phi_n(x) = x^(d/2) e^(-x/2) sqrt(n!/(n+d)!) L_n^d(x)`` for n = 0..nmax.

    This is ``<n+d|D(beta)|n>`` at ``x = |beta|^2`` up to phase, so every value
    is bounded by one.  The recurrence runs on a rescaled copy with a per-point
    log offset, which keeps it finite for large ``x`` where the prefactor
    underflows long before the polynomial stops growing.
    """
    if d < 0:
        raise ValueError("offset d must be non-negative")
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        logx = np.log(x)
    if d == 0:
        offset = -0.5 * x
    else:
        offset = np.where(x > 0, 0.5 * d * logx - 0.5 * x - 0.5 * math.lgamma(d + 1), -np.inf)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    yield np.exp(offset) * cur
    for n in range(nmax):
        nxt = ((2 * n + 1 + d - x) * cur - math.sqrt(n * (n + d)) * prev) / math.sqrt((n + 1) * (n + 1 + d))
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            scale = np.where(big, np.abs(cur), 1.0)
            cur = cur / scale
            prev = prev / scale
            offset = offset + np.log(scale)
        yield np.exp(offset) * cur


def laguerre_kernel(nmax: int, d: int, x) -> np.ndarray:
    """Stack of :func:`iter_laguerre_kernel` values, shape ``(nmax + 1, *x.shape)``."""
    return np.stack(list(iter_laguerre_kernel(nmax, d, x)))


def displacement_element(n: int, m: int, alpha: float) -> float:
    """Matrix element ``<n|D(alpha)|m>`` for real ``alpha``."""
    if n < 0 or m < 0:
        raise ValueError("Fock indices must be non-negative")
    sign = 1.0
    if alpha < 0:
        alpha = -alpha
        sign = (-1.0) ** (n - m)
    lo, d = min(n, m), abs(n - m)
    val = laguerre_kernel(lo, d, alpha * alpha)[lo]
    if n < m:
        val = val * (-1.0) ** d
    return sign * float(val)


def displacement_column(m: int, alpha: float, cutoff: int) -> np.ndarray:
    """``<n|D(alpha)|m>`` for n = 0..cutoff (real ``alpha``)."""
    col = np.empty(cutoff + 1)
    x = alpha * alpha
    for n in range(min(m, cutoff + 1)):
        # n < m: kernel index n, offset m - n, sign (-1)^(m - n)
        col[n] = (-1.0) ** (m - n) * laguerre_kernel(n, m - n, x)[n]
    if cutoff >= m:
        # n >= m share the kernel index m; vary the offset
        for n in range(m, cutoff + 1):
            col[n] = laguerre_kernel(m, n - m, x)[m]
    if alpha < 0:
        col *= (-1.0) ** (np.arange(cutoff + 1) - m)
    return col


@dataclass(frozen=True)
class SdnParams:
    """Field preparation: displacement ``alpha``, weight ``epsilon``, seed Fock level ``m``."""

    alpha: float
    epsilon: float = 0.0
    m: int = 0

    def __post_init__(self):
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be real and >= 0, got {self.alpha}")
        if int(self.m) != self.m or self.m < 0:
            raise ValueError(f"m must be a non-negative integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "epsilon", float(self.epsilon))


def sdn_normalization(params: SdnParams) -> float:
    """Normalisation constant ``lam`` with ``lam^-2 = 1 + eps^2 + 2 eps exp(-2 a^2) L_m(4 a^2)``."""
    a2 = params.alpha**2
    eps = params.epsilon
    inv2 = 1.0 + eps * eps + 2.0 * eps * math.exp(-2.0 * a2) * assoc_laguerre(params.m, 0, 4.0 * a2)
    if inv2 <= 1e-14:
        raise ValueError(f"state vanishes for {params}; D(alpha)|m> and D(-alpha)|m> cancel")
    return 1.0 / math.sqrt(inv2)


def default_cutoff(params: SdnParams, k: int = 1) -> int:
    """Fock cutoff ``ceil(a^2 + 10 a + m + 2k + 10)``."""
    a = params.alpha
    return int(math.ceil(a * a + 10 * a + params.m + 2 * k + 10))


@dataclass(frozen=True)
class FieldState:
    """Truncated Fock amplitudes ``C(n, m)``, n = 0..cutoff."""

    coeffs: np.ndarray
    params: SdnParams | None = None
    norm_const: float = field(default=1.0, compare=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    def tail_mass(self, k: int) -> float:
        """Probability held in levels above ``cutoff - 2k``."""
        return float(np.sum(self.coeffs[max(self.cutoff - 2 * k + 1, 0):] ** 2))

    @classmethod
    def fock(cls, n: int, cutoff: int | None = None) -> "FieldState":
        cutoff = n if cutoff is None else cutoff
        c = np.zeros(cutoff + 1)
        c[n] = 1.0
        return cls(c, SdnParams(0.0, 0.0, n))


def build_sdn_state(params: SdnParams, cutoff: int | None = None, k: int = 1) -> FieldState:
    """Amplitudes of the superposed displaced number state.

    Parameters
    ----------
    params : SdnParams
    cutoff : int, optional
        Highest Fock level kept; defaults to :func:`default_cutoff` for ``k``.
    k : int
        Photon number of the transition, only used for the default cutoff.

    Raises
    ------
    CutoffError
        If more than ``1e-10`` of the probability lies above ``cutoff``.
    """
    if cutoff is None:
        cutoff = default_cutoff(params, k)
    lam = sdn_normalization(params)
    col = displacement_column(params.m, params.alpha, cutoff)
    parity = (-1.0) ** (np.arange(cutoff + 1) - params.m)
    coeffs = lam * (col + params.epsilon * parity * col)
    missing = 1.0 - float(np.sum(coeffs**2))
    if missing > NORM_TOL:
        raise CutoffError(
            f"cutoff {cutoff} drops {missing:.3e} of the probability for {params}; "
            f"try cutoff >= {default_cutoff(params, k)}"
        )
    return FieldState(coeffs, params, lam)


def photon_distribution(state: FieldState) -> np.ndarray:
    """``P(n) = |C(n, m)|^2``."""
    return state.coeffs**2


def mean_photon(state: FieldState) -> float:
    p = photon_distribution(state)
    return float(np.dot(np.arange(len(p)), p))
