"""Charge-basis transmons and the transmon - QRS - transmon chain."""

from .charge_basis import (
    TransmonFan,
    TransmonLevels,
    TransmonParams,
    anharmonicity,
    charging_energy_ratio,
    transmon_hamiltonian,
    transmon_levels,
    transmon_scan,
)
from .chain import (
    DEFAULT_CHAIN_COUPLING,
    DEFAULT_CHAIN_LEVELS,
    DEFAULT_CHAIN_N_FOCK,
    SWEEP_VARIABLE,
    TRANSMON_1,
    TRANSMON_2,
    build_transmon_chain,
    chain_layout,
    chain_levels,
    chain_scan,
)

__all__ = [
    "TransmonFan",
    "TransmonLevels",
    "TransmonParams",
    "anharmonicity",
    "charging_energy_ratio",
    "transmon_hamiltonian",
    "transmon_levels",
    "transmon_scan",
    "DEFAULT_CHAIN_COUPLING",
    "DEFAULT_CHAIN_LEVELS",
    "DEFAULT_CHAIN_N_FOCK",
    "SWEEP_VARIABLE",
    "TRANSMON_1",
    "TRANSMON_2",
    "build_transmon_chain",
    "chain_layout",
    "chain_levels",
    "chain_scan",
]
