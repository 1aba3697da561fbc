"""Excitation transfer: full vs effective dynamics, transfer speed, unit conversion."""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..effective import LEVELS, build_heff_n, chi_elements, effective_layout, j_eff
from ..linalg import basis_vector
from ..model import RabiParams, SystemParams, build_total, named_state, rabi_eigensystem, two_qubit_state
from ..settings import DEFAULT_TOLERANCES, Tolerances
from .closed import (
    DEFAULT_PERIODS,
    DEFAULT_POINTS,
    TimeSeries,
    default_time_grid,
    excitation_number,
    first_maximum,
    run_closed,
    run_transfer,
)

DEFAULT_EFFECTIVE_LEVELS = 6


@dataclass(frozen=True)
class UnitSystem:
    """Physical units for a cavity at omega_cav = 2 pi x cavity_ghz."""
    cavity_ghz: float = 8.0

    def nanoseconds(self, t: float) -> float:
        """Time in 1/omega_cav to ns."""
        return float(t) / (2.0 * np.pi * self.cavity_ghz)

    def megahertz(self, omega: float) -> float:
        """Angular frequency in units of omega_cav to omega / 2 pi in MHz."""
        return float(omega) * self.cavity_ghz * 1e3

    def from_ghz(self, f_ghz: float) -> float:
        """omega / 2 pi in GHz to units of omega_cav."""
        return float(f_ghz) / self.cavity_ghz


def entangling_time(j: float) -> float:
    """sqrt(iSWAP) time pi / (4 J_eff), units 1/omega_cav."""
    return float(np.pi / (4.0 * abs(j)))


def transfer_time(j: float) -> float:
    """First complete transfer pi / (2 J_eff)."""
    return float(np.pi / (2.0 * abs(j)))


@dataclass
class Comparison:
    series: TimeSeries
    j_eff: float
    max_deviation: float


def compare_full_effective(
    s: SystemParams,
    times: Optional[Sequence[float]] = None,
    K: int = DEFAULT_EFFECTIVE_LEVELS,
    qubits: str = "eg",
    periods: float = DEFAULT_PERIODS,
    tol: Optional[Tolerances] = None,
) -> Comparison:
    """<s+_2 s-_2> under the full Hamiltonian and under the K-level effective one."""
    tol = tol or DEFAULT_TOLERANCES
    rabi_eig = rabi_eigensystem(s.rabi, tol)
    j = j_eff(s, tol=tol)
    if times is None:
        times = default_time_grid(j, periods, DEFAULT_POINTS)

    full = run_closed(
        build_total(s),
        named_state(qubits, rabi_eig, 0),
        times,
        {"n2": excitation_number(s.layout, "q2")},
        tol,
    )
    h_eff = build_heff_n(s, K, tol, rabi_eig)
    layout = effective_layout(min(K, rabi_eig.dim), s.n_qubits)
    psi_eff = np.kron(basis_vector(layout.dim(LEVELS), 0), two_qubit_state(qubits))
    eff = run_closed(h_eff, psi_eff, times, {"n2": excitation_number(layout, "q2")}, tol)

    series = TimeSeries(full.times)
    series.add("n2_full", full["n2"])
    series.add("n2_eff", eff["n2"])
    deviation = float(np.max(np.abs(full["n2"] - eff["n2"])))
    return Comparison(series=series, j_eff=j, max_deviation=deviation)


@dataclass
class TransferPoint:
    g_p: float
    two_j: float
    first_max_time: float
    first_max_value: float
    entangling_time: float


def transfer_point(s: SystemParams, points: int = DEFAULT_POINTS, tol: Optional[Tolerances] = None) -> TransferPoint:
    """2 J_eff and the first transfer maximum of the full dynamics."""
    j = j_eff(s, tol=tol)
    times = default_time_grid(j, 1.0, points)
    series = run_transfer(s, times, "eg", tol)
    t_max, n_max = first_maximum(series.times, series["n2"])
    return TransferPoint(s.rabi.g_p, 2.0 * j, t_max, n_max, entangling_time(j))


def transfer_speed_scan(
    s: SystemParams,
    g_p_grid: Sequence[float],
    points: int = DEFAULT_POINTS,
    tol: Optional[Tolerances] = None,
) -> List[TransferPoint]:
    return [transfer_point(s.with_value("g_p", g), points, tol) for g in g_p_grid]


def chi_scan(rabi: RabiParams, g_p_grid: Sequence[float], tol: Optional[Tolerances] = None) -> np.ndarray:
    """|chi_01|^2 along a g_p grid."""
    values = []
    for g in g_p_grid:
        p = RabiParams(omega_p=rabi.omega_p, g_p=float(g), n_fock=rabi.n_fock, omega_cav=rabi.omega_cav)
        chi = chi_elements(rabi_eigensystem(p, tol), 2)
        values.append(abs(chi[0, 1]) ** 2)
    return np.array(values)
