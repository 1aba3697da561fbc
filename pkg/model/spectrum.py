"""Spectrum sweeps with symmetry labels and avoided-crossing detection."""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import InvalidParameterError
from ..linalg import hermitian_eig
from ..settings import DEFAULT_TOLERANCES, Tolerances
from .hamiltonians import build_total, parity_operator, rabi_eigensystem, resolve_symmetries, swap_operator
from .params import RabiParams, SystemParams

logger = logging.getLogger("rabibus")

DEFAULT_LEVELS = 8
REFINE_XATOL = 1e-10
# Objective value when a sector runs out of levels during refinement
_MISSING_GAP = 1e3


@dataclass
class SpectrumPoint:
    """Lowest levels at one parameter value with their symmetry sector codes."""
    energies: np.ndarray
    parities: np.ndarray
    exchange: Optional[np.ndarray] = None

    @property
    def sectors(self) -> np.ndarray:
        if self.exchange is None:
            return self.parities.copy()
        return 2 * self.parities + self.exchange


@dataclass
class AvoidedCrossing:
    """Refined minimum of a same-sector adjacent-level gap."""
    location: float
    gap: float
    energy: float      # midpoint of the pair, measured from the ground state
    sector: int
    level: int         # lower level index inside the sector


@dataclass
class SpectrumScan:
    variable: str
    grid: np.ndarray
    energies: np.ndarray
    parities: np.ndarray
    exchange: Optional[np.ndarray] = None
    crossings: List[AvoidedCrossing] = field(default_factory=list)

    @property
    def relative_energies(self) -> np.ndarray:
        return self.energies - self.energies[:, :1]

    def first_crossing(self) -> Optional[AvoidedCrossing]:
        """Lowest-energy avoided crossing, if any."""
        return min(self.crossings, key=lambda c: c.energy) if self.crossings else None


def spectrum_point(
    s: SystemParams,
    m: int = DEFAULT_LEVELS,
    exchange: bool = False,
    tol: Optional[Tolerances] = None,
) -> SpectrumPoint:
    """Diagonalize the full Hamiltonian and label the lowest m levels."""
    tol = tol or DEFAULT_TOLERANCES
    layout = s.layout
    eig = hermitian_eig(build_total(s), tol.hermiticity)
    ops = [parity_operator(layout)]
    if exchange:
        ops.append(swap_operator(layout))
    _, labels = resolve_symmetries(eig, ops, tol)
    m = min(m, eig.dim)
    return SpectrumPoint(
        energies=eig.values[:m].copy(),
        parities=labels[:m, 0].copy(),
        exchange=labels[:m, 1].copy() if exchange else None,
    )


def rabi_spectrum_point(p: RabiParams, m: int = DEFAULT_LEVELS, tol: Optional[Tolerances] = None) -> SpectrumPoint:
    """Lowest m levels of the bare QRS with their parity."""
    eig = rabi_eigensystem(p, tol)
    m = min(m, eig.dim)
    return SpectrumPoint(energies=eig.values[:m].copy(), parities=eig.parities[:m].copy())


def _sector_levels(energies: np.ndarray, sectors: np.ndarray, code: int) -> np.ndarray:
    return energies[sectors == code]


def find_avoided_crossings(
    grid: Sequence[float],
    energies: np.ndarray,
    sectors: np.ndarray,
    evaluate: Callable[[float], Tuple[np.ndarray, np.ndarray]],
    tol: Optional[Tolerances] = None,
) -> List[AvoidedCrossing]:
    """Locate and refine local minima of adjacent same-sector gaps.

    `evaluate(x)` returns (ascending energies, sector codes) at x and is
    used by a bounded scalar minimization around every grid minimum.
    Refined gaps below the crossing floor are true crossings and dropped.
    """
    tol = tol or DEFAULT_TOLERANCES
    grid = np.asarray(grid, dtype=float)
    if grid.size < 3:
        return []
    if np.any(np.diff(grid) <= 0):
        raise InvalidParameterError("sweep grid must be strictly increasing")

    crossings: List[AvoidedCrossing] = []
    for code in np.unique(sectors):
        counts = (sectors == code).sum(axis=1)
        n_levels = int(counts.min())
        if n_levels < 2:
            continue
        levels = np.array([_sector_levels(energies[i], sectors[i], code)[:n_levels] for i in range(grid.size)])
        for k in range(n_levels - 1):
            gaps = levels[:, k + 1] - levels[:, k]

            def objective(x: float, code=code, k=k) -> float:
                e, sec = evaluate(x)
                sector = _sector_levels(e, sec, code)
                if sector.size < k + 2:
                    return _MISSING_GAP
                return float(sector[k + 1] - sector[k])

            for i in range(1, grid.size - 1):
                if not (gaps[i] < gaps[i - 1] and gaps[i] <= gaps[i + 1]):
                    continue
                result = minimize_scalar(
                    objective,
                    bounds=(grid[i - 1], grid[i + 1]),
                    method="bounded",
                    options={"xatol": REFINE_XATOL},
                )
                x, gap = float(result.x), float(result.fun)
                if gap < tol.crossing_floor:
                    logger.debug("true crossing in sector %d at %.6f (gap %.2e)", code, x, gap)
                    continue
                e, sec = evaluate(x)
                sector = _sector_levels(e, sec, code)
                energy = 0.5 * (sector[k] + sector[k + 1]) - e[0]
                crossings.append(AvoidedCrossing(x, gap, float(energy), int(code), k))
                logger.debug("avoided crossing at %.6f, gap %.6e, sector %d", x, gap, code)
    crossings.sort(key=lambda c: (c.energy, c.location))
    return crossings


def assemble_scan(
    s: SystemParams,
    variable: str,
    grid: Sequence[float],
    points: Sequence[SpectrumPoint],
    exchange: bool = False,
    tol: Optional[Tolerances] = None,
    detect: bool = True,
) -> SpectrumScan:
    """Stack per-point results (in grid order) and run the crossing detector."""
    grid = np.asarray(grid, dtype=float)
    m = min(len(p.energies) for p in points)
    energies = np.array([p.energies[:m] for p in points])
    parities = np.array([p.parities[:m] for p in points])
    exch = np.array([p.exchange[:m] for p in points]) if exchange else None
    scan = SpectrumScan(variable, grid, energies, parities, exch)
    if detect:
        sectors = np.array([p.sectors[:m] for p in points])

        def evaluate(x: float) -> Tuple[np.ndarray, np.ndarray]:
            point = spectrum_point(s.with_value(variable, x), m, exchange, tol)
            return point.energies, point.sectors

        scan.crossings = find_avoided_crossings(grid, energies, sectors, evaluate, tol)
    return scan


def spectrum_scan(
    s: SystemParams,
    variable: str,
    grid: Sequence[float],
    m: int = DEFAULT_LEVELS,
    tol: Optional[Tolerances] = None,
    exchange: Optional[bool] = None,
    detect: bool = True,
) -> SpectrumScan:
    """Lowest m levels with parity labels over a parameter grid.

    When every grid point keeps the two qubits identical the qubit-swap
    symmetry is resolved as well, so the decoupled singlet does not sit
    inside the bright-state anticrossing sector.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise InvalidParameterError("sweep grid is empty")
    params = [s.with_value(variable, x) for x in grid]
    if exchange is None:
        exchange = all(p.exchange_symmetric for p in params)
    points = [spectrum_point(p, m, exchange, tol) for p in params]
    return assemble_scan(s, variable, grid, points, exchange, tol, detect)
