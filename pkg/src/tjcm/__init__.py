"""Superposed displaced number states in the two-atom k-photon Jaynes-Cummings model."""

from .dynamics import (
    CouplingParams,
    JointState,
    block_hamiltonian,
    evolve_coefficients,
    evolve_state,
    evolve_states,
    rabi_frequency,
    symmetric_coefficients,
)
from .entanglement import (
    ReducedDensity,
    TangleSample,
    reduced_atoms,
    reduced_field,
    reduced_one_atom,
    tangle_atoms_field,
    tangle_field_atoms,
    tangle_one_atom,
)
from .fock import (
    CutoffError,
    FieldState,
    SdnParams,
    assoc_laguerre,
    build_sdn_state,
    default_cutoff,
    displacement_element,
    log_factorial,
    mean_photon,
    photon_distribution,
)
from .observables import (
    GridSpec,
    PhaseDistribution,
    RevivalNotFound,
    TimeSeries,
    WignerGrid,
    atomic_inversion,
    atomic_inversion_asymptotic,
    inversion_series,
    local_maxima,
    locate_revival,
    phase_distribution,
    revival_time,
    wigner,
    wigner_asymptotic,
)

__version__ = "0.1.0"
