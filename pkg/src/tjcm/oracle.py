"""Brute-force references on the full truncated product space.

Nothing here reuses the block structure of the library: the Hamiltonian is
assembled from Kronecker products of ladder and spin matrices, propagated by
full diagonalisation, and every observable is taken straight from the dense
state vector or density matrix.  Slow on purpose; tests and ``tjcm validate``
only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .dynamics import CouplingParams, JointState, evolve_state
from .entanglement import reduced_field, tangle_field_atoms, tangle_one_atom
from .fock import FieldState
from .observables import phase_distribution, wigner_from_density

__all__ = [
    "DenseOperator",
    "annihilation",
    "build_full_hamiltonian",
    "oracle_state_vector",
    "oracle_evolve",
    "oracle_displacement",
    "dense_reduced_field",
    "dense_reduced_atoms",
    "dense_wigner",
    "dense_phase",
    "dense_tangles",
    "compare_with_oracle",
    "VALIDATION_TOL",
]

MAX_CUTOFF = 200
VALIDATION_TOL = 1e-8

# |+> = (1, 0), |-> = (0, 1)
_SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_ID2 = np.eye(2)


@dataclass(frozen=True)
class DenseOperator:
    """Matrix on field (x) atom1 (x) atom2 (or on the field alone)."""

    matrix: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), 1)


def build_full_hamiltonian(params: CouplingParams, cutoff: int) -> DenseOperator:
    """Interaction Hamiltonian ``sum_j lambda_j (a^k s_j^+ + a^dag^k s_j^-)`` / ``lambda_1``.

    Dimension ``4 (cutoff + 1)``; product index ``4 n + 2 a_1 + a_2``.
    """
    if cutoff > MAX_CUTOFF:
        raise ValueError(f"dense oracle limited to cutoff <= {MAX_CUTOFF}")
    ak = np.linalg.matrix_power(annihilation(cutoff + 1), params.k)
    s1 = np.kron(_SIGMA_PLUS, _ID2)
    s2 = np.kron(_ID2, _SIGMA_PLUS)
    h = np.kron(ak, s1 + params.g * s2)
    h = h + h.T
    return DenseOperator(h, f"H_I(k={params.k}, g={params.g})")


def oracle_state_vector(field: FieldState, params: CouplingParams, T: float) -> np.ndarray:
    """Dense joint state at ``T``, shape ``(field_dim, 2, 2)``."""
    cutoff = field.cutoff + 2 * params.k if params.cutoff is None else params.cutoff
    h = build_full_hamiltonian(params, cutoff).matrix
    w, v = np.linalg.eigh(h)
    psi0 = np.zeros((cutoff + 1, 2, 2))
    psi0[:field.cutoff + 1, 0, 0] = field.coeffs
    psi0 = psi0.ravel()
    psi = v @ (np.exp(-1j * w * T) * (v.T @ psi0))
    return psi.reshape(cutoff + 1, 2, 2)


def oracle_evolve(field: FieldState, params: CouplingParams, T: float) -> JointState:
    """Dense evolution re-expressed in branch form."""
    psi = oracle_state_vector(field, params, T)
    k, n1 = params.k, field.cutoff + 1
    amps = np.stack([
        psi[0:n1, 0, 0],
        psi[k:k + n1, 0, 1],
        psi[k:k + n1, 1, 0],
        psi[2 * k:2 * k + n1, 1, 1],
    ], axis=1)
    return JointState(float(T), amps, params, psi.shape[0])


def oracle_displacement(alpha: float, dim: int) -> DenseOperator:
    """``exp(alpha (a^dag - a))`` on ``dim`` Fock levels."""
    a = annihilation(dim)
    return DenseOperator(expm(alpha * (a.T - a)), f"D({alpha})")


def dense_reduced_field(psi: np.ndarray) -> np.ndarray:
    flat = psi.reshape(psi.shape[0], 4)
    return flat @ flat.conj().T


def dense_reduced_atoms(psi: np.ndarray) -> np.ndarray:
    flat = psi.reshape(psi.shape[0], 4)
    return flat.T @ flat.conj()


def dense_wigner(rho: np.ndarray, points, pad: int = 200) -> np.ndarray:
    """``W(x, y) = (1/pi) Tr[rho D(b) Parity D(b)^dag]`` with ``b = (x + i y)/sqrt 2``.

    ``rho`` is embedded in ``pad`` extra levels so the displaced parity is
    accurate on its support.
    """
    dim = rho.shape[0] + pad
    big = np.zeros((dim, dim), dtype=complex)
    big[:rho.shape[0], :rho.shape[0]] = rho
    a = annihilation(dim)
    parity = np.diag((-1.0) ** np.arange(dim))
    out = []
    for x, y in points:
        b = (x + 1j * y) / math.sqrt(2)
        d = expm(b * a.T - np.conj(b) * a)
        out.append(np.real(np.trace(big @ d @ parity @ d.conj().T)) / math.pi)
    return np.array(out)


def dense_phase(rho: np.ndarray, thetas) -> np.ndarray:
    """``(1/2pi) sum_{n,n'} rho[n, n'] exp(i (n' - n) theta)``."""
    n = np.arange(rho.shape[0])
    out = []
    for th in thetas:
        kernel = np.exp(1j * (n[None, :] - n[:, None]) * th)
        out.append(np.real(np.sum(rho * kernel)) / (2 * math.pi))
    return np.array(out)


def dense_tangles(psi: np.ndarray) -> dict[str, float]:
    """Field-atoms and both one-atom tangles from partial traces of the dense state."""
    rho_f = dense_reduced_field(psi)
    rho_a1 = np.einsum("paj,pbj->ab", psi, psi.conj())
    rho_a2 = np.einsum("pja,pjb->ab", psi, psi.conj())
    return {
        "field_atoms": 2.0 * (1.0 - float(np.real(np.trace(rho_f @ rho_f)))),
        "atom1": 2.0 * (1.0 - float(np.real(np.trace(rho_a1 @ rho_a1)))),
        "atom2": 2.0 * (1.0 - float(np.real(np.trace(rho_a2 @ rho_a2)))),
    }


def compare_with_oracle(field: FieldState, params: CouplingParams, T: float,
                        wigner_points=((0.0, 0.0), (1.5, -0.5), (-2.0, 1.0), (2.5, 2.0), (0.5, 3.5)),
                        n_thetas: int = 64) -> dict[str, float]:
    """Largest absolute deviation of each library observable from its dense counterpart."""
    state = evolve_state(field, params, T)
    psi = oracle_state_vector(field, params, T)
    ref = oracle_evolve(field, params, T)
    rho_dense = dense_reduced_field(psi)

    lib_w = np.array([
        wigner_from_density(reduced_field(state).matrix, [x], [y])[0, 0] for x, y in wigner_points
    ])
    pd = phase_distribution(state, n_thetas)
    tangles = dense_tangles(psi)
    return {
        "amplitudes": float(np.max(np.abs(state.amplitudes - ref.amplitudes))),
        "wigner": float(np.max(np.abs(lib_w - dense_wigner(rho_dense, wigner_points)))),
        "phase": float(np.max(np.abs(pd.values - dense_phase(rho_dense, pd.thetas)))),
        "tangle_field_atoms": abs(tangle_field_atoms(state).value - tangles["field_atoms"]),
        "tangle_atom1": abs(tangle_one_atom(state, 1).value - tangles["atom1"]),
        "tangle_atom2": abs(tangle_one_atom(state, 2).value - tangles["atom2"]),
    }
