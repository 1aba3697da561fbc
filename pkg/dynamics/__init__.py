"""Closed-system dynamics: excitation transfer, inversion and entanglement."""

from .closed import (
    TimeSeries,
    default_time_grid,
    entanglement_monitor,
    excitation_number,
    expectations,
    first_maximum,
    initial_state,
    population_inversion,
    projector,
    run_closed,
    run_transfer,
    transfer_observables,
)
from .transfer import (
    Comparison,
    TransferPoint,
    UnitSystem,
    chi_scan,
    compare_full_effective,
    entangling_time,
    transfer_point,
    transfer_speed_scan,
    transfer_time,
)

__all__ = [
    "TimeSeries",
    "default_time_grid",
    "entanglement_monitor",
    "excitation_number",
    "expectations",
    "first_maximum",
    "initial_state",
    "population_inversion",
    "projector",
    "run_closed",
    "run_transfer",
    "transfer_observables",
    "Comparison",
    "TransferPoint",
    "UnitSystem",
    "chi_scan",
    "compare_full_effective",
    "entangling_time",
    "transfer_point",
    "transfer_speed_scan",
    "transfer_time",
]
