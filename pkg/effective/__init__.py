"""Dispersive effective qubit-qubit Hamiltonians mediated by the QRS."""

from .dispersive import (
    LEVELS,
    EffectiveModel,
    build_heff_n,
    build_heff_two_level,
    chi_elements,
    dressed_qubit_frequencies,
    effective_layout,
    effective_model,
    j_eff,
    validity_ratio,
)
from .schrieffer_wolff import project_levels, sw_generator, sw_hamiltonian, sw_operators, sw_residual
from .rwa import RwaSystem, rwa_eigensystem, rwa_hamiltonian, rwa_two_qubit

__all__ = [
    "LEVELS",
    "EffectiveModel",
    "build_heff_n",
    "build_heff_two_level",
    "chi_elements",
    "dressed_qubit_frequencies",
    "effective_layout",
    "effective_model",
    "j_eff",
    "validity_ratio",
    "project_levels",
    "sw_generator",
    "sw_hamiltonian",
    "sw_operators",
    "sw_residual",
    "RwaSystem",
    "rwa_eigensystem",
    "rwa_hamiltonian",
    "rwa_two_qubit",
]
