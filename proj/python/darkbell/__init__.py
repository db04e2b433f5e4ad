"""Dark-state Bell-state preparation in the two-qubit Rabi(-Stark) model."""

from ._core import (  # noqa: F401
    DEFAULT_NMAX,
    Error,
    basis_labels,
    boundary_matrix,
    check_conditions,
    dark_state,
    dimension,
    eigh_sector,
    evolve,
    hamiltonian,
    params_at,
    physical_time_ns,
    preset_duration,
    presets,
    reduced_qubit_fidelity,
    spectrum_preset,
)

__version__ = "0.1.0"
