"""Numerical tolerances and run-wide defaults."""

import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Optional

# Fock truncations
DEFAULT_N_FOCK = 20
DEFAULT_N_FOCK_LIOUVILLIAN = 8

# Charge-basis cutoff for transmons
DEFAULT_N_MAX = 20

THREADS_ENV = "RABIBUS_THREADS"


@dataclass(frozen=True)
class Tolerances:
    """Thresholds shared by the numerical layers."""
    hermiticity: float = 1e-12
    degeneracy: float = 1e-9
    parity: float = 0.99
    resonance: float = 1e-6
    steady_zero: float = 1e-8
    steady_uniqueness: float = 1e-10
    trace_drift: float = 1e-8
    crossing_floor: float = 1e-6
    validity: float = 0.05
    cutoff_leakage: float = 1e-6

    def with_overrides(self, overrides: Optional[Dict[str, Any]]) -> "Tolerances":
        """Return a copy with the given fields replaced (unknown keys raise KeyError)."""
        if not overrides:
            return self
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise KeyError(f"unknown tolerance(s): {', '.join(sorted(unknown))}")
        return replace(self, **{k: float(v) for k, v in overrides.items()})

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


def thread_count() -> int:
    """Worker threads for sweeps, from RABIBUS_THREADS (default: CPU count)."""
    raw = os.environ.get(THREADS_ENV, "")
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value > 0:
        return value
    return os.cpu_count() or 1
