"""Interaction-picture evolution of the field and both atoms.

Starting from ``|+,+> (x) sum_n C(n)|n>``, the Hamiltonian only couples the
four kets ``|+,+,n>, |+,-,n+k>, |-,+,n+k>, |-,-,n+2k>`` for each ``n``.  Time is
the scaled time ``T = lambda_1 t`` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fock import CutoffError, FieldState, falling_ratio

__all__ = [
    "CouplingParams",
    "JointState",
    "rabi_frequency",
    "block_hamiltonian",
    "evolve_coefficients",
    "symmetric_coefficients",
    "evolve_state",
    "evolve_states",
]


@dataclass(frozen=True)
class CouplingParams:
    """Transition order ``k``, coupling ratio ``g = lambda_2 / lambda_1``.

    ``cutoff`` is the highest Fock level of the joint field space; ``None``
    means the field cutoff plus ``2k`` headroom.
    """

    k: int = 1
    g: float = 1.0
    cutoff: int | None = None

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if not self.g >= 0:
            raise ValueError(f"g must be non-negative, got {self.g}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "g", float(self.g))

    @property
    def symmetric(self) -> bool:
        return self.g == 1.0


@dataclass(frozen=True)
class JointState:
    """Branch amplitudes ``A_j(n) = C(n) X_j(T, n, k)`` at scaled time ``T``.

    ``amplitudes[n, j]`` multiplies ``|+,+,n>, |+,-,n+k>, |-,+,n+k>, |-,-,n+2k>``
    for ``j = 0..3``.  ``field_dim`` is the size of the field space that the
    shifted branches live in.
    """

    T: float
    amplitudes: np.ndarray
    params: CouplingParams
    field_dim: int

    @property
    def nmax(self) -> int:
        return self.amplitudes.shape[0] - 1

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def branch_vectors(self) -> np.ndarray:
        """Field vectors of the four atomic kets, shape ``(4, field_dim)``."""
        k = self.params.k
        n1 = self.nmax + 1
        psi = np.zeros((4, self.field_dim), dtype=complex)
        psi[0, :n1] = self.amplitudes[:, 0]
        psi[1, k:k + n1] = self.amplitudes[:, 1]
        psi[2, k:k + n1] = self.amplitudes[:, 2]
        psi[3, 2 * k:2 * k + n1] = self.amplitudes[:, 3]
        return psi


def _couplings(n, k):
    """``f1 = sqrt((n+k)!/n!)`` and ``f2 = sqrt((n+2k)!/(n+k)!)``."""
    n = np.atleast_1d(n)
    f1 = np.array([math.sqrt(falling_ratio(int(j), k)) for j in n])
    f2 = np.array([math.sqrt(falling_ratio(int(j) + k, k)) for j in n])
    return f1, f2


def rabi_frequency(n: int, k: int) -> float:
    """``zeta_n = sqrt(2 (n+k)!/n! + 2 (n+2k)!/(n+k)!)``."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    return math.sqrt(2.0 * falling_ratio(n, k) + 2.0 * falling_ratio(n + k, k))


def block_hamiltonian(n: int, params: CouplingParams) -> np.ndarray:
    """4x4 interaction Hamiltonian (units of ``lambda_1``) of the ``n`` block."""
    f1, f2 = (v[0] for v in _couplings(n, params.k))
    return _blocks(np.array([f1]), np.array([f2]), params.g)[0]


def _blocks(f1, f2, g):
    h = np.zeros((len(f1), 4, 4))
    h[:, 0, 1] = h[:, 1, 0] = g * f1
    h[:, 0, 2] = h[:, 2, 0] = f1
    h[:, 1, 3] = h[:, 3, 1] = f2
    h[:, 2, 3] = h[:, 3, 2] = g * f2
    return h


@lru_cache(maxsize=64)
def _eigensystem(nmax: int, k: int, g: float):
    f1, f2 = _couplings(np.arange(nmax + 1), k)
    w, v = np.linalg.eigh(_blocks(f1, f2, g))
    # only the projection of |+,+,n> onto each eigenvector is ever needed
    weights = v * v[:, 0, None, :]
    w.setflags(write=False)
    weights.setflags(write=False)
    return w, weights


def _spectral(nmax: int, params: CouplingParams, times) -> np.ndarray:
    """``X[t, n, j]`` for every requested time."""
    w, weights = _eigensystem(nmax, params.k, params.g)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    phase = np.exp(-1j * times[:, None, None] * w[None, :, :])
    return np.einsum("nje,tne->tnj", weights, phase)


def evolve_coefficients(n: int, params: CouplingParams, T: float) -> np.ndarray:
    """``(X1, X2, X3, X4)`` of block ``n`` after scaled time ``T``.

    Columns of ``exp(-i H_n T)`` applied to ``|+,+,n>``, from the
    eigendecomposition of :func:`block_hamiltonian`.
    """
    w, v = np.linalg.eigh(block_hamiltonian(n, params))
    return v @ (np.exp(-1j * w * T) * v[0])


def symmetric_coefficients(n, k: int, T: float) -> np.ndarray:
    """Closed-form ``X_j`` for equal couplings (``g = 1``).

    Vectorised over ``n``; returns shape ``(len(n), 4)`` (or ``(4,)`` for a
    scalar ``n``).
    """
    scalar = np.ndim(n) == 0
    n = np.atleast_1d(n)
    a = np.array([falling_ratio(int(j), k) for j in n])
    b = np.array([falling_ratio(int(j) + k, k) for j in n])
    zeta = np.sqrt(2.0 * a + 2.0 * b)
    c, s = np.cos(T * zeta), np.sin(T * zeta)
    x = np.empty((len(n), 4), dtype=complex)
    x[:, 0] = (a * c + b) / (a + b)
    x[:, 1] = x[:, 2] = -1j * np.sqrt(a) * s / zeta
    x[:, 3] = np.sqrt(a * b) * (c - 1.0) / (a + b)
    return x[0] if scalar else x


def _joint_dim(field: FieldState, params: CouplingParams) -> int:
    need = field.cutoff + 2 * params.k
    if params.cutoff is None:
        return need + 1
    if params.cutoff < need:
        raise CutoffError(
            f"joint cutoff {params.cutoff} leaves no room for the 2k={2 * params.k} "
            f"photon shift of a field truncated at {field.cutoff}"
        )
    return params.cutoff + 1


def evolve_states(field: FieldState, params: CouplingParams, times) -> list[JointState]:
    """:func:`evolve_state` for many times, sharing one diagonalisation."""
    dim = _joint_dim(field, params)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    x = _spectral(field.cutoff, params, times)
    amps = field.coeffs[None, :, None] * x
    return [JointState(float(t), a, params, dim) for t, a in zip(times, amps)]


def evolve_state(field: FieldState, params: CouplingParams, T: float) -> JointState:
    """Joint state at scaled time ``T`` (negative ``T`` runs backwards)."""
    return evolve_states(field, params, [T])[0]


def branch_populations(field: FieldState, params: CouplingParams, times) -> np.ndarray:
    """``sum_n |A_j(n)|^2`` per time and branch, shape ``(len(times), 4)``.

    Chunked so long time grids never materialise every joint state at once.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    _joint_dim(field, params)
    out = np.empty((len(times), 4))
    p = field.coeffs**2
    step = max(1, 2_000_000 // (4 * (field.cutoff + 1)))
    for i in range(0, len(times), step):
        x = _spectral(field.cutoff, params, times[i:i + step])
        out[i:i + step] = np.einsum("n,tnj->tj", p, np.abs(x) ** 2)
    return out
