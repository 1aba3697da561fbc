"""Quantum Rabi bus model: parameters, Hamiltonians, symmetries and spectra."""

from .params import QubitParams, RabiParams, SystemParams, SWEEP_NAMES, sweep_values
from .hamiltonians import (
    TWO_QUBIT_STATES,
    build_rabi,
    build_total,
    check_rabi_gap,
    classify_parity,
    named_state,
    parity_operator,
    rabi_eigensystem,
    rabi_gap,
    rabi_parity,
    rabi_terms,
    resolve_symmetries,
    swap_operator,
    two_qubit_state,
    with_parities,
)
from .spectrum import (
    AvoidedCrossing,
    SpectrumPoint,
    SpectrumScan,
    assemble_scan,
    find_avoided_crossings,
    rabi_spectrum_point,
    spectrum_point,
    spectrum_scan,
)

__all__ = [
    "QubitParams",
    "RabiParams",
    "SystemParams",
    "SWEEP_NAMES",
    "sweep_values",
    "TWO_QUBIT_STATES",
    "build_rabi",
    "build_total",
    "check_rabi_gap",
    "classify_parity",
    "named_state",
    "parity_operator",
    "rabi_eigensystem",
    "rabi_gap",
    "rabi_parity",
    "rabi_terms",
    "resolve_symmetries",
    "swap_operator",
    "two_qubit_state",
    "with_parities",
    "AvoidedCrossing",
    "SpectrumPoint",
    "SpectrumScan",
    "assemble_scan",
    "find_avoided_crossings",
    "rabi_spectrum_point",
    "spectrum_point",
    "spectrum_scan",
]
