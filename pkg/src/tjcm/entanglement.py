"""Reduced density matrices and the field-atoms / one-atom tangles.

A tangle here is ``2 (1 - Tr rho^2)`` of one side of a bipartition of the
globally pure joint state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import JointState

__all__ = [
    "ReducedDensity",
    "TangleSample",
    "reduced_field",
    "reduced_atoms",
    "reduced_one_atom",
    "tangle_field_atoms",
    "tangle_atoms_field",
    "tangle_one_atom",
    "tangle_field_atoms_expanded",
    "tangle_one_atom_expanded",
    "DISENTANGLED",
]

# Tangle below which a bipartition is reported as disentangled.
DISENTANGLED = 0.05


@dataclass(frozen=True)
class ReducedDensity:
    matrix: np.ndarray
    label: str

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))


@dataclass(frozen=True)
class TangleSample:
    T: float
    value: float


def reduced_field(state: JointState) -> ReducedDensity:
    """Trace out both atoms: ``rho_f = sum_j |psi_j><psi_j|`` over the branch vectors."""
    psi = state.branch_vectors()
    return ReducedDensity(psi.T @ psi.conj(), "field")


def reduced_atoms(state: JointState) -> ReducedDensity:
    """Trace out the field; 4x4 in the order ``|++>, |+->, |-+>, |-->``."""
    psi = state.branch_vectors()
    return ReducedDensity(psi @ psi.conj().T, "atoms")


def reduced_one_atom(state: JointState, atom: int = 1) -> ReducedDensity:
    """2x2 state of ``atom`` (1 or 2) in the order ``|+>, |->``."""
    r = reduced_atoms(state).matrix.reshape(2, 2, 2, 2)
    if atom == 1:
        m = np.einsum("ajbj->ab", r)
    elif atom == 2:
        m = np.einsum("jajb->ab", r)
    else:
        raise ValueError(f"atom must be 1 or 2, got {atom}")
    return ReducedDensity(m, f"atom{atom}")


def tangle_field_atoms(state: JointState) -> TangleSample:
    return TangleSample(state.T, 2.0 * (1.0 - reduced_field(state).purity()))


def tangle_atoms_field(state: JointState) -> TangleSample:
    """Same tangle as :func:`tangle_field_atoms`, from the two-atom side."""
    return TangleSample(state.T, 2.0 * (1.0 - reduced_atoms(state).purity()))


def tangle_one_atom(state: JointState, atom: int = 1) -> TangleSample:
    return TangleSample(state.T, 2.0 * (1.0 - reduced_one_atom(state, atom).purity()))


def tangle_field_atoms_expanded(state: JointState) -> float:
    """Field-atoms tangle from the explicit double sum over Fock levels.

    ``2 - 2 sum_{p,p'} |sum_j A_j(p - s_j) conj(A_j(p' - s_j))|^2`` with shifts
    ``s = (0, k, k, 2k)``.  Cross-check only; written element by element
    rather than as a matrix product.
    """
    psi = state.branch_vectors()
    dim = psi.shape[1]
    total = 0.0
    for p in range(dim):
        row = psi[0, p] * psi[0].conj() + psi[1, p] * psi[1].conj() + psi[2, p] * psi[2].conj() \
            + psi[3, p] * psi[3].conj()
        total += float(np.sum(np.abs(row) ** 2))
    return 2.0 - 2.0 * total


def tangle_one_atom_expanded(state: JointState, atom: int = 2) -> float:
    """One-atom tangle from populations and the single coherence.

    For atom 2 the excited population collects branches 1 and 3 and the
    coherence is ``sum_n A_1(n+k) conj(A_2(n)) + A_3(n+k) conj(A_4(n))``;
    atom 1 swaps the roles of branches 2 and 3.
    """
    a = state.amplitudes
    k = state.params.k
    up, down = ((0, 1), (2, 3)) if atom == 1 else ((0, 2), (1, 3))
    pop = np.sum(np.abs(a[:, up[0]]) ** 2 + np.abs(a[:, up[1]]) ** 2)
    low = np.sum(np.abs(a[:, down[0]]) ** 2 + np.abs(a[:, down[1]]) ** 2)
    # |+, s> with field p pairs with |-, s> with field p; branch shifts differ by k
    coh = np.sum(a[k:, up[0]] * a[:-k, down[0]].conj()) + np.sum(a[k:, up[1]] * a[:-k, down[1]].conj()) \
        if a.shape[0] > k else 0.0
    return float(2.0 - 2.0 * (pop**2 + low**2 + 2.0 * abs(coh) ** 2))
