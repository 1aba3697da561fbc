"""Steady-state excitation transfer: ab initio and effective two-qubit master equations."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..dynamics import excitation_number
from ..effective import rwa_two_qubit
from ..effective.rwa import TWO_QUBITS
from ..linalg import EigenSystem, HilbertLayout
from ..model import SystemParams, build_total
from ..settings import DEFAULT_N_FOCK_LIOUVILLIAN, DEFAULT_TOLERANCES, Tolerances
from .channels import DissipationRates, dressed_channels, dressed_eigensystem
from .steady import DIRECT, steady_state
from .superoperator import EIGEN, LAB, Superoperator, liouvillian, liouvillian_eigenframe

logger = logging.getLogger("rabibus")

# both steady excitations below this count as zero when comparing models
RELATIVE_FLOOR = 1e-12

IDENTICAL_RATES = DissipationRates(gamma_pump=1e-2, gamma_out=1e-1, gamma_x=1e-2, gamma_z=1e-2, gamma_cav=1e-2)
DETUNED_RATES = DissipationRates(gamma_pump=1e-2, gamma_out=1e-4, gamma_x=1e-2, gamma_z=1e-2, gamma_cav=1e-2)


def identical_qubit_system(g_p: float, n_fock: int = DEFAULT_N_FOCK_LIOUVILLIAN) -> SystemParams:
    """omega_q1 = omega_q2 = 0.2, omega_p = 0.8, g1 = g2 = 0.01."""
    return SystemParams.two_qubit(0.8, g_p, 0.2, 0.2, 0.01, 0.01, n_fock=n_fock)


def detuned_qubit_system(g_p: float, n_fock: int = DEFAULT_N_FOCK_LIOUVILLIAN) -> SystemParams:
    """As identical_qubit_system with omega_q2 = 0.19."""
    return SystemParams.two_qubit(0.8, g_p, 0.2, 0.19, 0.01, 0.01, n_fock=n_fock)


def channel_frequencies(s: SystemParams) -> dict:
    omegas = {"p": s.rabi.omega_p, "cav": s.rabi.omega_cav}
    for n, q in enumerate(s.qubits, 1):
        omegas[f"q{n}"] = q.omega_q
    return omegas


def system_liouvillian(
    s: SystemParams,
    rates: DissipationRates,
    frame: str = EIGEN,
    tol: Optional[Tolerances] = None,
) -> Superoperator:
    """Dressed-basis Liouvillian of the full bus (QRS + qubits)."""
    tol = tol or DEFAULT_TOLERANCES
    h = build_total(s)
    eig = dressed_eigensystem(h, s.layout, tol)
    channels = dressed_channels(eig, s.layout, channel_frequencies(s), rates)
    logger.debug(
        "Liouvillian for g_p=%g: d=%d, %d dressed jumps",
        s.rabi.g_p, eig.dim, sum(len(c) for c in channels),
    )
    if frame == LAB:
        return liouvillian(h, channels)
    return liouvillian_eigenframe(eig, channels)


@dataclass
class SteadyPoint:
    g_p: float
    n1: float
    n2: float
    n_fock: int


def expectation_density(op: np.ndarray, rho: np.ndarray) -> float:
    return float(np.real(np.trace(op @ rho)))


def _excitations(rho: np.ndarray, layout: HilbertLayout):
    return (
        expectation_density(excitation_number(layout, "q1"), rho),
        expectation_density(excitation_number(layout, "q2"), rho),
    )


def steady_point(
    s: SystemParams,
    rates: DissipationRates,
    method: str = DIRECT,
    tol: Optional[Tolerances] = None,
) -> SteadyPoint:
    """<s+_n s-_n> of both qubits in the ab initio steady state."""
    rho = steady_state(system_liouvillian(s, rates, EIGEN, tol), method, tol)
    n1, n2 = _excitations(rho, s.layout)
    return SteadyPoint(s.rabi.g_p, n1, n2, s.rabi.n_fock)


@dataclass
class SteadyScan:
    grid: np.ndarray
    points: List[SteadyPoint] = field(default_factory=list)

    @property
    def n2(self) -> np.ndarray:
        return np.array([p.n2 for p in self.points])

    @property
    def relative_variation(self) -> float:
        """(max - min) / mean of the qubit-2 excitation over the scan."""
        values = self.n2
        return float((values.max() - values.min()) / values.mean())

    def enhancement(self) -> float:
        """Last point over first point."""
        values = self.n2
        return float(values[-1] / values[0])


def _scan(factory, g_p_grid, rates, n_fock, method, tol) -> SteadyScan:
    grid = np.asarray(g_p_grid, dtype=float)
    if rates.gamma_out == 0.0:
        logger.warning("gamma_out = 0: qubit 2 has no decay channel and the steady state may not be unique")
    scan = SteadyScan(grid)
    for g in grid:
        scan.points.append(steady_point(factory(float(g), n_fock), rates, method, tol))
    return scan


def steady_scan_identical(
    g_p_grid: Sequence[float],
    rates: DissipationRates = IDENTICAL_RATES,
    n_fock: int = DEFAULT_N_FOCK_LIOUVILLIAN,
    method: str = DIRECT,
    tol: Optional[Tolerances] = None,
) -> SteadyScan:
    return _scan(identical_qubit_system, g_p_grid, rates, n_fock, method, tol)


def steady_scan_nonidentical(
    g_p_grid: Sequence[float],
    rates: DissipationRates = DETUNED_RATES,
    n_fock: int = DEFAULT_N_FOCK_LIOUVILLIAN,
    method: str = DIRECT,
    tol: Optional[Tolerances] = None,
) -> SteadyScan:
    return _scan(detuned_qubit_system, g_p_grid, rates, n_fock, method, tol)


def relative_difference(effective: float, ab_initio: float) -> float:
    """Delta_r = 1 - effective / ab_initio, zero when both vanish."""
    if abs(ab_initio) < RELATIVE_FLOOR:
        return 0.0 if abs(effective) < RELATIVE_FLOOR else float("inf")
    return float(1.0 - effective / ab_initio)


@dataclass
class EffectiveMaster:
    liouvillian: Superoperator
    rho: np.ndarray
    n2_effective: float
    n2_ab_initio: float
    delta_r: float


def effective_liouvillian(
    s: SystemParams,
    rates: DissipationRates,
    tol: Optional[Tolerances] = None,
) -> Superoperator:
    """16x16 Liouvillian of the exchange model, pump on x1 and loss on x2 in its eigenbasis."""
    tol = tol or DEFAULT_TOLERANCES
    system = rwa_two_qubit(s, tol=tol)
    eig = EigenSystem(system.energies, system.states)
    qubit_rates = DissipationRates(gamma_pump=rates.gamma_pump, gamma_out=rates.gamma_out)
    channels = dressed_channels(eig, TWO_QUBITS, channel_frequencies(s), qubit_rates)
    return liouvillian(system.hamiltonian, channels)


def effective_master(
    s: SystemParams,
    rates: DissipationRates,
    method: str = DIRECT,
    tol: Optional[Tolerances] = None,
) -> EffectiveMaster:
    """Steady qubit-2 excitation of the effective model against the ab initio one."""
    sup = effective_liouvillian(s, rates, tol)
    rho = steady_state(sup, method, tol)
    n2_eff = expectation_density(excitation_number(TWO_QUBITS, "q2"), rho)
    n2_ab = steady_point(s, rates, method, tol).n2
    return EffectiveMaster(sup, rho, n2_eff, n2_ab, relative_difference(n2_eff, n2_ab))


def effective_scan(
    g_p_grid: Sequence[float],
    rates: DissipationRates = IDENTICAL_RATES,
    n_fock: int = DEFAULT_N_FOCK_LIOUVILLIAN,
    method: str = DIRECT,
    tol: Optional[Tolerances] = None,
) -> List[EffectiveMaster]:
    return [effective_master(identical_qubit_system(float(g), n_fock), rates, method, tol) for g in g_p_grid]
