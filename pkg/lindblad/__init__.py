"""Dressed-basis master equations of the open bus."""

from .channels import (
    CHANNEL_RATES,
    DOWN,
    UP,
    DissipationRates,
    DressedTransition,
    LindbladChannel,
    bare_operators,
    dressed_channel,
    dressed_channels,
    dressed_eigensystem,
    qubit_excitations,
)
from .scans import (
    IDENTICAL_RATES,
    DETUNED_RATES,
    EffectiveMaster,
    SteadyPoint,
    SteadyScan,
    channel_frequencies,
    detuned_qubit_system,
    effective_liouvillian,
    effective_master,
    effective_scan,
    expectation_density,
    identical_qubit_system,
    relative_difference,
    steady_point,
    steady_scan_identical,
    steady_scan_nonidentical,
    system_liouvillian,
)
from .steady import DIRECT, EIG, evolve_density, integrate_master, steady_state, trace_distance
from .superoperator import (
    EIGEN,
    LAB,
    Superoperator,
    apply_direct,
    column_major_permutation,
    liouvillian,
    liouvillian_column_major,
    liouvillian_eigenframe,
    to_column_major,
    to_row_major,
    unvec,
    vec,
)

__all__ = [
    "CHANNEL_RATES",
    "DOWN",
    "UP",
    "DissipationRates",
    "DressedTransition",
    "LindbladChannel",
    "bare_operators",
    "dressed_channel",
    "dressed_channels",
    "dressed_eigensystem",
    "qubit_excitations",
    "IDENTICAL_RATES",
    "DETUNED_RATES",
    "EffectiveMaster",
    "SteadyPoint",
    "SteadyScan",
    "channel_frequencies",
    "detuned_qubit_system",
    "effective_liouvillian",
    "effective_master",
    "effective_scan",
    "expectation_density",
    "identical_qubit_system",
    "relative_difference",
    "steady_point",
    "steady_scan_identical",
    "steady_scan_nonidentical",
    "system_liouvillian",
    "DIRECT",
    "EIG",
    "evolve_density",
    "integrate_master",
    "steady_state",
    "trace_distance",
    "EIGEN",
    "LAB",
    "Superoperator",
    "apply_direct",
    "column_major_permutation",
    "liouvillian",
    "liouvillian_column_major",
    "liouvillian_eigenframe",
    "to_column_major",
    "to_row_major",
    "unvec",
    "vec",
]
