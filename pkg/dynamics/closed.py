"""Closed-system propagation and observables."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import find_peaks

from ..errors import InvalidDimensionError, InvalidParameterError
from ..linalg import (
    CAVITY,
    QRS_QUBIT,
    embed,
    evolve_states,
    hermitian_eig,
    qubit_label,
    reduced_density,
    sigma_pm,
    von_neumann_entropy,
)
from ..model import SystemParams, build_total, named_state, rabi_eigensystem
from ..settings import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger("rabibus")

DEFAULT_POINTS = 2000
DEFAULT_PERIODS = 1.5
# peaks smaller than this share of the signal range are ripples, not transfers
PEAK_PROMINENCE = 0.25


@dataclass
class TimeSeries:
    """Named real-valued channels sampled on a common time grid (units 1/omega_cav)."""
    times: np.ndarray
    channels: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise InvalidParameterError("time grid must be strictly increasing")
        for name, values in self.channels.items():
            if len(values) != self.times.size:
                raise InvalidDimensionError(f"channel {name!r} has {len(values)} samples for {self.times.size} times")

    def __getitem__(self, name: str) -> np.ndarray:
        return self.channels[name]

    @property
    def names(self) -> List[str]:
        return list(self.channels)

    def add(self, name: str, values: Sequence[float]) -> None:
        values = np.asarray(values, dtype=float)
        if values.size != self.times.size:
            raise InvalidDimensionError(f"channel {name!r} has {values.size} samples for {self.times.size} times")
        self.channels[name] = values


def default_time_grid(j: float, periods: float = DEFAULT_PERIODS, points: int = DEFAULT_POINTS) -> np.ndarray:
    """Grid over `periods` exchange periods pi/|J|."""
    if j == 0:
        raise InvalidParameterError("exchange coupling is zero; no transfer period")
    return np.linspace(0.0, periods * np.pi / abs(j), points)


def excitation_number(layout, label: str) -> np.ndarray:
    """s+ s- on one qubit factor."""
    return embed(sigma_pm(+1) @ sigma_pm(-1), layout, label)


def projector(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=complex).reshape(-1)
    return np.outer(state, state.conj())


def expectations(states: np.ndarray, op: np.ndarray) -> Tuple[np.ndarray, float]:
    """Real parts of <psi_t|op|psi_t> for rows psi_t, plus the largest imaginary residue."""
    values = np.einsum("ti,ti->t", states.conj(), states @ op.T)
    return values.real.copy(), float(np.max(np.abs(values.imag))) if values.size else 0.0


def run_closed(
    h: np.ndarray,
    psi0: np.ndarray,
    times: Sequence[float],
    observables: Dict[str, np.ndarray],
    tol: Optional[Tolerances] = None,
) -> TimeSeries:
    """Exact evolution through the eigendecomposition of a time-independent H."""
    tol = tol or DEFAULT_TOLERANCES
    eig = hermitian_eig(h, tol.hermiticity)
    series = TimeSeries(np.asarray(times, dtype=float))
    states = evolve_states(eig, psi0, series.times)
    for name, op in observables.items():
        if op.shape != h.shape:
            raise InvalidDimensionError(f"observable {name!r} has shape {op.shape}, Hamiltonian {h.shape}")
        values, residue = expectations(states, op)
        if residue > 1e-10:
            logger.debug("observable %s carries imaginary residue %.2e", name, residue)
        series.add(name, values)
    return series


def population_inversion(
    s: SystemParams,
    times: Sequence[float],
    tol: Optional[Tolerances] = None,
) -> TimeSeries:
    """Populations of |0>|D21> and |1>|D20> starting from |0>|D21>."""
    rabi_eig = rabi_eigensystem(s.rabi, tol)
    upper = named_state("D21", rabi_eig, 0)
    lower = named_state("D20", rabi_eig, 1)
    series = run_closed(
        build_total(s),
        upper,
        times,
        {"p_0_D21": projector(upper), "p_1_D20": projector(lower)},
        tol,
    )
    series.add("p_sum", series["p_0_D21"] + series["p_1_D20"])
    return series


def entanglement_monitor(
    s: SystemParams,
    psi0: np.ndarray,
    times: Sequence[float],
    tol: Optional[Tolerances] = None,
) -> TimeSeries:
    """Von Neumann entropy between the QRS pair and the qubits.

    For a pure global state both reduced states share their spectrum, so the
    smaller qubit factor is traced to.
    """
    tol = tol or DEFAULT_TOLERANCES
    layout = s.layout
    eig = hermitian_eig(build_total(s), tol.hermiticity)
    series = TimeSeries(np.asarray(times, dtype=float))
    states = evolve_states(eig, psi0, series.times)
    qubits = [label for label in layout.labels if label not in (QRS_QUBIT, CAVITY)]
    entropy = [von_neumann_entropy(reduced_density(psi, layout, qubits)) for psi in states]
    series.add("entropy", entropy)
    return series


def first_maximum(times: Sequence[float], values: Sequence[float]) -> Tuple[float, float]:
    """First prominent maximum, refined by a parabola through its neighbours."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    span = float(np.ptp(values)) if values.size else 0.0
    peaks, _ = find_peaks(values, prominence=PEAK_PROMINENCE * span if span > 0 else None)
    if peaks.size == 0:
        raise InvalidParameterError("signal has no maximum inside the time grid")
    i = int(peaks[0])
    t0, t1, t2 = times[i - 1:i + 2]
    y0, y1, y2 = values[i - 1:i + 2]
    denom = (y0 - 2.0 * y1 + y2)
    if denom == 0.0:
        return float(t1), float(y1)
    # uniform spacing assumed around the peak
    shift = 0.5 * (y0 - y2) / denom
    step = 0.5 * (t2 - t0)
    return float(t1 + shift * step), float(y1 - 0.25 * (y0 - y2) * shift)


def transfer_observables(s: SystemParams) -> Dict[str, np.ndarray]:
    layout = s.layout
    return {f"n{n}": excitation_number(layout, qubit_label(n)) for n in range(1, s.n_qubits + 1)}


def initial_state(s: SystemParams, qubits: str = "eg", qrs_level: int = 0, tol: Optional[Tolerances] = None) -> np.ndarray:
    return named_state(qubits, rabi_eigensystem(s.rabi, tol), qrs_level)


def run_transfer(
    s: SystemParams,
    times: Iterable[float],
    qubits: str = "eg",
    tol: Optional[Tolerances] = None,
) -> TimeSeries:
    """Excitation numbers of every qubit under the full Hamiltonian."""
    return run_closed(build_total(s), initial_state(s, qubits, 0, tol), list(times), transfer_observables(s), tol)
