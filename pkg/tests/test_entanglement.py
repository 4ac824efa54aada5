import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tjcm import (
    CouplingParams,
    SdnParams,
    build_sdn_state,
    evolve_state,
    reduced_atoms,
    reduced_field,
    reduced_one_atom,
    tangle_atoms_field,
    tangle_field_atoms,
    tangle_one_atom,
)
from tjcm.entanglement import (
    DISENTANGLED,
    ReducedDensity,
    tangle_field_atoms_expanded,
    tangle_one_atom_expanded,
)
from tjcm.oracle import dense_tangles, oracle_state_vector

states = st.builds(
    lambda alpha, eps, m, k, g, T: (SdnParams(alpha, eps, m), CouplingParams(k, g), T),
    alpha=st.floats(0.05, 4.0), eps=st.sampled_from([-1.0, 0.0, 1.0]), m=st.integers(0, 3),
    k=st.integers(1, 3), g=st.floats(0.0, 2.0), T=st.floats(0.0, 60.0),
)


def _state(case):
    sdn, params, T = case
    return evolve_state(build_sdn_state(sdn, k=params.k), params, T)


@settings(max_examples=40, deadline=None)
@given(case=states)
def test_reduced_density_invariants(case):
    s = _state(case)
    for rd in (reduced_field(s), reduced_atoms(s), reduced_one_atom(s, 1), reduced_one_atom(s, 2)):
        m = rd.matrix
        assert np.max(np.abs(m - m.conj().T)) < 1e-12
        assert abs(rd.trace() - 1.0) < 1e-10
        assert np.linalg.eigvalsh(m).min() > -1e-10


@settings(max_examples=40, deadline=None)
@given(case=states)
def test_tangle_bounds_and_schmidt_symmetry(case):
    s = _state(case)
    fa = tangle_field_atoms(s).value
    assert -1e-9 <= fa <= 2 + 1e-9
    assert abs(fa - tangle_atoms_field(s).value) < 1e-9
    for atom in (1, 2):
        assert -1e-9 <= tangle_one_atom(s, atom).value <= 1 + 1e-9


@settings(max_examples=40, deadline=None)
@given(case=states)
def test_expanded_sums_agree(case):
    s = _state(case)
    assert abs(tangle_field_atoms_expanded(s) - tangle_field_atoms(s).value) < 1e-6
    for atom in (1, 2):
        assert abs(tangle_one_atom_expanded(s, atom) - tangle_one_atom(s, atom).value) < 1e-6


def test_initial_state_is_product():
    s = evolve_state(build_sdn_state(SdnParams(3.0, 1.0, 1)), CouplingParams(2, 0.5), 0.0)
    assert reduced_field(s).purity() == pytest.approx(1.0, abs=1e-12)
    assert tangle_field_atoms(s).value == pytest.approx(0.0, abs=1e-12)
    assert tangle_one_atom(s, 1).value == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(reduced_one_atom(s, 2).matrix, [[1, 0], [0, 0]], atol=1e-14)


def test_maximally_mixed_qubit():
    rd = ReducedDensity(np.eye(2) / 2, "atom1")
    assert 2 * (1 - rd.purity()) == pytest.approx(1.0)


def test_one_atom_bad_label(small_field):
    s = evolve_state(small_field, CouplingParams(1, 1.0), 1.0)
    with pytest.raises(ValueError):
        reduced_one_atom(s, 3)


def test_one_atom_matrix_entries(small_field):
    s = evolve_state(small_field, CouplingParams(2, 0.4), 2.2)
    a, k = s.amplitudes, 2
    m = reduced_one_atom(s, 1).matrix
    assert m[0, 0].real == pytest.approx(np.sum(np.abs(a[:, 0]) ** 2 + np.abs(a[:, 1]) ** 2), abs=1e-13)
    coh = np.sum(a[k:, 0] * a[:-k, 2].conj()) + np.sum(a[k:, 1] * a[:-k, 3].conj())
    assert m[0, 1] == pytest.approx(coh, abs=1e-13)


@pytest.mark.parametrize("k", [1, 2])
def test_symmetric_atoms_exchange(k):
    f = build_sdn_state(SdnParams(3.0, 1.0, 0), k=k)
    for T in (0.7, 5.0, 13.1):
        s = evolve_state(f, CouplingParams(k, 1.0), T)
        assert np.allclose(reduced_one_atom(s, 1).matrix, reduced_one_atom(s, 2).matrix, atol=1e-12)
        assert abs(tangle_one_atom(s, 1).value - tangle_one_atom(s, 2).value) < 1e-9


def test_matches_oracle_tangles(small_field):
    params = CouplingParams(2, 0.5)
    s = evolve_state(small_field, params, 5.0)
    ref = dense_tangles(oracle_state_vector(small_field, params, 5.0))
    assert abs(tangle_field_atoms(s).value - ref["field_atoms"]) < 1e-8
    assert abs(tangle_one_atom(s, 1).value - ref["atom1"]) < 1e-8
    assert abs(tangle_one_atom(s, 2).value - ref["atom2"]) < 1e-8


@pytest.fixture(scope="module")
def k2_field():
    return build_sdn_state(SdnParams(7.0, 0.0, 0), k=2)


def test_k2_field_atoms_tangle(k2_field):
    params = CouplingParams(2, 1.0)
    assert tangle_field_atoms(evolve_state(k2_field, params, math.pi / 2)).value == pytest.approx(1.0, abs=0.05)
    for T in (math.pi, 2 * math.pi, 3 * math.pi):
        assert tangle_field_atoms(evolve_state(k2_field, params, T)).value < 0.1


def test_k2_shifted_field_is_nearly_pure(k2_field):
    s = evolve_state(k2_field, CouplingParams(2, 1.0), math.pi)
    assert reduced_field(s).purity() > 0.99
    assert reduced_one_atom(s, 1).purity() > 0.99
    assert reduced_one_atom(s, 1).matrix[1, 1].real > 0.99


def test_k2_asymmetric_one_atom_disentanglement(k2_field):
    # the atom coupled with g * lambda_1 is nearly disentangled around pi/2 and 3 pi/2
    params = CouplingParams(2, 0.5)
    for T in (math.pi / 2, 3 * math.pi / 2):
        assert tangle_one_atom(evolve_state(k2_field, params, T), 2).value < DISENTANGLED
    mid = tangle_one_atom(evolve_state(k2_field, params, math.pi / 4), 2).value
    assert mid > 10 * DISENTANGLED
