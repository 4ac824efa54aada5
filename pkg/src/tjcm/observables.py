"""Atomic inversion, Wigner function and Pegg-Barnett phase distribution."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.ndimage import maximum_filter1d

from .dynamics import CouplingParams, JointState, branch_populations
from .entanglement import reduced_field
from .fock import FieldState, iter_laguerre_kernel, mean_photon

__all__ = [
    "TimeSeries",
    "GridSpec",
    "WignerGrid",
    "PhaseDistribution",
    "RevivalNotFound",
    "atomic_inversion",
    "inversion_series",
    "atomic_inversion_asymptotic",
    "revival_time",
    "locate_revival",
    "wigner",
    "wigner_from_density",
    "wigner_asymptotic",
    "phase_distribution",
    "local_maxima",
]

BOUNDARY_TOL = 1e-6


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("times and values must be 1-d and of equal length")
        if len(t) > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class GridSpec:
    """Square phase-space grid of ``points`` x ``points`` over ``[-radius, radius]``.

    ``radius=None`` means ``sqrt(2) alpha + 5``.
    """

    points: int = 201
    radius: float | None = None

    def axis(self, alpha: float) -> np.ndarray:
        r = math.sqrt(2) * alpha + 5 if self.radius is None else self.radius
        return np.linspace(-r, r, self.points)


@dataclass(frozen=True)
class WignerGrid:
    """``values[i, j] = W(x_axis[i], y_axis[j])``."""

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray
    T: float

    def integral(self) -> float:
        dx = self.x_axis[1] - self.x_axis[0]
        dy = self.y_axis[1] - self.y_axis[0]
        return float(self.values.sum() * dx * dy)

    def boundary_max(self) -> float:
        w = np.abs(self.values)
        return float(max(w[0].max(), w[-1].max(), w[:, 0].max(), w[:, -1].max()))


@dataclass(frozen=True)
class PhaseDistribution:
    thetas: np.ndarray
    values: np.ndarray
    theta_ref: float = 0.0

    def integral(self) -> float:
        return float(trapezoid(self.values, self.thetas))


class RevivalNotFound(ValueError):
    """No collapse followed by a revival in the series."""


# ---------------------------------------------------------------------------
# inversion


def atomic_inversion(state: JointState) -> float:
    """``<sigma_z> = sum_n |A_1(n)|^2 - |A_4(n)|^2`` (mean over both atoms)."""
    a = state.amplitudes
    return float(np.sum(np.abs(a[:, 0]) ** 2 - np.abs(a[:, 3]) ** 2))


def inversion_series(field: FieldState, params: CouplingParams, times) -> TimeSeries:
    pops = branch_populations(field, params, times)
    return TimeSeries(np.asarray(times, dtype=float), pops[:, 0] - pops[:, 3])


def atomic_inversion_asymptotic(field: FieldState, T):
    """Strong-field inversion ``sum_n P(n) cos(2 T sqrt(n + 3/2))``.

    Accepts a scalar or an array of times.
    """
    p = field.coeffs**2
    root = np.sqrt(np.arange(len(p)) + 1.5)
    t = np.asarray(T, dtype=float)
    out = np.cos(2.0 * t.reshape(-1, 1) * root) @ p
    return float(out[0]) if t.ndim == 0 else out.reshape(t.shape)


def revival_time(field: FieldState) -> float:
    """``2 pi sqrt(nbar + 3/2)``."""
    return 2 * math.pi * math.sqrt(mean_photon(field) + 1.5)


def locate_revival(series: TimeSeries, window: int = 10, collapse_level: float = 0.2) -> float:
    """Time of the largest envelope value inside the first revival.

    The envelope is a centred sliding maximum of ``|values - mean|`` over
    ``window`` samples, widened when needed to cover one full oscillation
    (estimated from the first three mean crossings).  The first collapse is
    where the envelope falls below ``collapse_level`` times its starting
    value; the revival is the next stretch where it climbs back above that
    level.
    """
    centred = series.values - series.values.mean()
    dev = np.abs(centred)
    crossings = np.flatnonzero(np.diff(np.signbit(centred)))
    if crossings.size >= 3:
        window = max(window, int(crossings[2] - crossings[0]) + 1)
    env = maximum_filter1d(dev, size=window, mode="nearest")
    level = collapse_level * env[0]
    if level <= 0:
        raise RevivalNotFound("series has no oscillation to collapse")
    low = np.flatnonzero(env < level)
    if low.size == 0:
        raise RevivalNotFound("envelope never collapses")
    high = np.flatnonzero(env[low[0]:] >= level)
    if high.size == 0:
        raise RevivalNotFound("no revival after the first collapse")
    start = low[0] + high[0]
    after = np.flatnonzero(env[start:] < level)
    stop = start + after[0] if after.size else len(env)
    return float(series.times[start + np.argmax(env[start:stop])])


# ---------------------------------------------------------------------------
# Wigner function


def wigner_from_density(rho: np.ndarray, x_axis, y_axis) -> np.ndarray:
    """Wigner function of a Fock-basis density matrix on the ``x + i y`` plane.

    Normalised so that ``dx dy`` integrates to one and a coherent state
    ``|a>`` peaks at ``(sqrt(2) Re a, sqrt(2) Im a)`` with height ``1/pi``.
    Each diagonal offset ``d`` contributes
    ``(-1)^n rho[n, n+d] e^{i d arg z} phi_n^d(2|z|^2)``; the ``n > n'`` half is
    the complex conjugate and is folded in by doubling the real part.
    """
    x, y = np.meshgrid(np.asarray(x_axis, float), np.asarray(y_axis, float), indexing="ij")
    z = x + 1j * y
    r2 = 2.0 * np.abs(z) ** 2
    rot = np.exp(1j * np.angle(z))
    dim = rho.shape[0]
    sign = (-1.0) ** np.arange(dim)
    w = np.zeros_like(x)
    turn = np.ones_like(z)
    for d in range(dim):
        diag = np.diagonal(rho, offset=d) * sign[:dim - d]
        if np.any(diag != 0):
            acc = np.zeros_like(z)
            for c, phi in zip(diag, iter_laguerre_kernel(dim - 1 - d, d, r2)):
                if c != 0:
                    acc += c * phi
            w += (1.0 if d == 0 else 2.0) * np.real(turn * acc)
        turn = turn * rot
    return w / math.pi


def wigner(state: JointState, grid: GridSpec | None = None, alpha: float | None = None,
           x_axis=None, y_axis=None) -> WignerGrid:
    """Wigner function of the field at the state's time.

    The grid comes from explicit axes, or from ``grid`` scaled by ``alpha``.
    Warns when the grid edge still carries ``|W| > 1e-6``.
    """
    if x_axis is None:
        grid = grid or GridSpec()
        x_axis = grid.axis(alpha or 0.0)
    y_axis = x_axis if y_axis is None else y_axis
    rho = reduced_field(state).matrix
    out = WignerGrid(np.asarray(x_axis, float), np.asarray(y_axis, float),
                     wigner_from_density(rho, x_axis, y_axis), state.T)
    if min(out.values.shape) > 2 and out.boundary_max() > BOUNDARY_TOL:
        warnings.warn(f"Wigner function is {out.boundary_max():.2e} on the grid edge; widen the grid",
                      RuntimeWarning, stacklevel=2)
    return out


def wigner_asymptotic(alpha: float, T: float, grid: GridSpec | None = None,
                      x_axis=None, y_axis=None) -> WignerGrid:
    """Strong-field Wigner function for ``(g, k, eps, m) = (1, 1, 0, 0)``.

    Three Gaussians (one fixed at ``(sqrt2 a, 0)``, two rotating by
    ``+-eta``, ``eta = T / sqrt(nbar)``) minus the interference term
    ``2 I_int sin(eta)``, with ``nbar = alpha^2``.
    """
    if x_axis is None:
        x_axis = (grid or GridSpec()).axis(alpha)
    y_axis = x_axis if y_axis is None else y_axis
    x, y = np.meshgrid(np.asarray(x_axis, float), np.asarray(y_axis, float), indexing="ij")
    nbar = alpha * alpha
    root = math.sqrt(nbar)
    eta = T / root
    eta_p = T * root + T / (2 * root)
    r = math.sqrt(2) * alpha
    se, ce = math.sin(eta), math.cos(eta)

    def bell(x0, y0):
        return np.exp(-((x - x0) ** 2) - (y - y0) ** 2)

    base = r * (x * se)
    mu_plus = eta_p - nbar * se + base + r * y * ce + r * y
    mu_minus = eta_p - nbar * se + base - r * y * ce - r * y
    i_int = (
        np.exp(-((x - r * ce) ** 2) - y**2)
        * np.cos(2 * eta_p + 2 * math.sqrt(2) * x * alpha * se - nbar * math.sin(2 * eta)) * se
        + np.exp(-((x - r * math.cos(eta / 2) ** 2) ** 2))
        * (np.exp(-((y + alpha / math.sqrt(2) * se) ** 2)) * np.sin(mu_plus)
           + np.exp(-((y - alpha / math.sqrt(2) * se) ** 2)) * np.sin(mu_minus))
    )
    w = (2 * bell(r, 0.0) + bell(r * ce, r * se) + bell(r * ce, -r * se) - 2 * i_int * se) / (4 * math.pi)
    return WignerGrid(np.asarray(x_axis, float), np.asarray(y_axis, float), w, float(T))


def local_maxima(grid: WignerGrid, threshold: float = 0.05) -> list[tuple[float, float, float]]:
    """Grid points strictly above their 8 neighbours and above ``threshold``.

    Returns ``(x, y, W)`` triples sorted by decreasing ``W``.
    """
    w = grid.values
    pad = np.pad(w, 1, constant_values=-np.inf)
    core = pad[1:-1, 1:-1]
    mask = core > threshold
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if dx or dy:
                mask &= core > pad[1 + dx:pad.shape[0] - 1 + dx, 1 + dy:pad.shape[1] - 1 + dy]
    idx = np.argwhere(mask)
    peaks = [(float(grid.x_axis[i]), float(grid.y_axis[j]), float(w[i, j])) for i, j in idx]
    return sorted(peaks, key=lambda p: -p[2])


# ---------------------------------------------------------------------------
# phase distribution


def phase_distribution(state: JointState, n_thetas: int = 720) -> PhaseDistribution:
    """Pegg-Barnett phase density on ``n_thetas`` points spanning ``[-pi, pi]``.

    ``P(theta) = (1/2pi) sum_j |sum_n e^{-i n theta} psi_j(n)|^2`` with the
    four atomic branches ``psi_j``; this equals
    ``(1/2pi) sum_{n,n'} rho_{n n'} e^{i (n'-n) theta}``.
    """
    if n_thetas < 64:
        raise ValueError(f"need at least 64 phase samples, got {n_thetas}")
    thetas = np.linspace(-math.pi, math.pi, n_thetas)
    psi = state.branch_vectors()
    basis = np.exp(-1j * np.outer(thetas, np.arange(psi.shape[1])))
    amp = basis @ psi.T
    values = np.sum(np.abs(amp) ** 2, axis=1) / (2 * math.pi)
    return PhaseDistribution(thetas, values)
