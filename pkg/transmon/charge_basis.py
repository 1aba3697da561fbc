"""Transmon Hamiltonian in the charge basis.

H = 4 E_C (n - N_g)^2 - E_J/2 sum_n (|n><n+1| + |n+1><n|), n in [-n_max, n_max].
Energies are in units of omega_cav.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from ..errors import InvalidDimensionError, InvalidParameterError
from ..settings import DEFAULT_N_MAX, DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger("rabibus")

MIN_N_MAX = 10
DEFAULT_LEVELS = 3


@dataclass(frozen=True)
class TransmonParams:
    e_c: float
    e_j: float
    n_g: float = 0.0
    n_max: int = DEFAULT_N_MAX

    def __post_init__(self):
        if self.e_c <= 0:
            raise InvalidParameterError(f"E_C must be > 0, got {self.e_c}")
        if self.e_j < 0:
            raise InvalidParameterError(f"E_J must be >= 0, got {self.e_j}")
        if self.n_max < MIN_N_MAX:
            raise InvalidParameterError(f"n_max must be >= {MIN_N_MAX}, got {self.n_max}")

    @classmethod
    def from_ratio(cls, e_c: float, ratio: float, n_g: float = 0.0, n_max: int = DEFAULT_N_MAX) -> "TransmonParams":
        return cls(e_c=e_c, e_j=ratio * e_c, n_g=n_g, n_max=n_max)

    @property
    def ratio(self) -> float:
        return self.e_j / self.e_c

    @property
    def dim(self) -> int:
        return 2 * self.n_max + 1

    @property
    def charges(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1, dtype=float)


def _diagonal(p: TransmonParams) -> np.ndarray:
    return 4.0 * p.e_c * (p.charges - p.n_g) ** 2


def _off_diagonal(p: TransmonParams) -> np.ndarray:
    return np.full(p.dim - 1, -0.5 * p.e_j)


def transmon_hamiltonian(p: TransmonParams) -> np.ndarray:
    h = np.diag(_diagonal(p)) + np.diag(_off_diagonal(p), 1) + np.diag(_off_diagonal(p), -1)
    return h.astype(complex)


@dataclass
class TransmonLevels:
    """Lowest levels with E_0 := 0 and the charge operator <i|N|j> between them."""
    energies: np.ndarray
    charge: np.ndarray
    vectors: np.ndarray
    leakage: float

    def __len__(self) -> int:
        return len(self.energies)


def transmon_levels(p: TransmonParams, k: int = DEFAULT_LEVELS, tol: Optional[Tolerances] = None) -> TransmonLevels:
    tol = tol or DEFAULT_TOLERANCES
    if not 1 <= k <= p.dim:
        raise InvalidDimensionError(f"requested {k} levels from a charge basis of dimension {p.dim}")
    values, vectors = scipy.linalg.eigh_tridiagonal(
        _diagonal(p), _off_diagonal(p), select="i", select_range=(0, k - 1)
    )
    # boundary charge states carry weight when the cutoff is too small
    leakage = float(np.max(np.abs(vectors[[0, -1], :])))
    if leakage > tol.cutoff_leakage:
        logger.warning(
            "transmon level %d leaks %.2e onto the charge cutoff n_max=%d; increase n_max",
            k - 1, leakage, p.n_max,
        )
    charge = vectors.T @ (p.charges[:, np.newaxis] * vectors)
    return TransmonLevels(values - values[0], charge, vectors, leakage)


def anharmonicity(p: TransmonParams) -> float:
    """alpha = E_10 - E_21."""
    e = transmon_levels(p, 3).energies
    return float((e[1] - e[0]) - (e[2] - e[1]))


def charging_energy_ratio(e_c_ghz: float, cavity_ghz: float) -> float:
    """E_C / hbar in units of omega_cav, both given as frequencies over 2 pi in GHz."""
    if cavity_ghz <= 0:
        raise InvalidParameterError(f"cavity frequency must be > 0, got {cavity_ghz}")
    return float(e_c_ghz) / float(cavity_ghz)


@dataclass
class TransmonFan:
    ratios: np.ndarray
    energies: np.ndarray  # (len(ratios), levels), ground shifted to zero


def transmon_scan(
    e_c: float,
    ratios: Sequence[float],
    k: int = DEFAULT_LEVELS,
    n_max: int = DEFAULT_N_MAX,
    n_g: float = 0.0,
    tol: Optional[Tolerances] = None,
) -> TransmonFan:
    """Lowest k levels against E_J / E_C at fixed E_C."""
    ratios = np.asarray(ratios, dtype=float)
    energies = np.array([
        transmon_levels(TransmonParams.from_ratio(e_c, r, n_g, n_max), k, tol).energies for r in ratios
    ])
    return TransmonFan(ratios, energies.reshape(ratios.size, k))
