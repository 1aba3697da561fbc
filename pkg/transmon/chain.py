"""Transmon - QRS - transmon chain with three-level transmons."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..linalg import CAVITY, QRS_QUBIT, HilbertLayout, embed_product, quadrature
from ..model import RabiParams, SpectrumScan, find_avoided_crossings, rabi_terms
from ..settings import DEFAULT_TOLERANCES, Tolerances
from .charge_basis import DEFAULT_LEVELS, TransmonParams, transmon_levels

logger = logging.getLogger("rabibus")

TRANSMON_1 = "t1"
TRANSMON_2 = "t2"
DEFAULT_CHAIN_COUPLING = 0.02
DEFAULT_CHAIN_N_FOCK = 15
DEFAULT_CHAIN_LEVELS = 6
SWEEP_VARIABLE = "ej_ec_2"


def chain_layout(n_fock: int, levels: int = DEFAULT_LEVELS) -> HilbertLayout:
    """[t1(levels), qrs(2), cavity(n_fock), t2(levels)]."""
    return HilbertLayout.of((TRANSMON_1, levels), (QRS_QUBIT, 2), (CAVITY, n_fock), (TRANSMON_2, levels))


def build_transmon_chain(
    t1: TransmonParams,
    t2: TransmonParams,
    rabi: RabiParams,
    g1: float = DEFAULT_CHAIN_COUPLING,
    g2: float = DEFAULT_CHAIN_COUPLING,
    levels: int = DEFAULT_LEVELS,
    tol: Optional[Tolerances] = None,
) -> np.ndarray:
    """sum_l sum_j E_j^l |j_l><j_l| + H_Rabi + sum_l g_l N_l (b + b^dag)."""
    layout = chain_layout(rabi.n_fock, levels)
    h = rabi_terms(rabi, layout)
    x = quadrature(rabi.n_fock)
    for label, params, g in ((TRANSMON_1, t1, g1), (TRANSMON_2, t2, g2)):
        spectrum = transmon_levels(params, levels, tol)
        h = h + embed_product(layout, {label: np.diag(spectrum.energies).astype(complex)})
        if g:
            h = h + g * embed_product(layout, {label: spectrum.charge.astype(complex), CAVITY: x})
    return h


def chain_levels(
    t1: TransmonParams,
    t2: TransmonParams,
    rabi: RabiParams,
    g1: float = DEFAULT_CHAIN_COUPLING,
    g2: float = DEFAULT_CHAIN_COUPLING,
    m: int = DEFAULT_CHAIN_LEVELS,
    tol: Optional[Tolerances] = None,
) -> np.ndarray:
    """Lowest m eigenvalues of the chain."""
    h = build_transmon_chain(t1, t2, rabi, g1, g2, tol=tol)
    return scipy.linalg.eigvalsh(h, subset_by_index=(0, m - 1))


def chain_scan(
    t1: TransmonParams,
    rabi: RabiParams,
    ratios: Sequence[float],
    g1: float = DEFAULT_CHAIN_COUPLING,
    g2: float = DEFAULT_CHAIN_COUPLING,
    m: int = DEFAULT_CHAIN_LEVELS,
    e_c2: Optional[float] = None,
    tol: Optional[Tolerances] = None,
    detect: bool = True,
) -> SpectrumScan:
    """Chain spectrum against E_J/E_C of transmon 2 with avoided crossings.

    Transmon 2 shares t1's charging energy unless e_c2 is given. The chain
    has no parity resolved here, so every level sits in one sector.
    """
    tol = tol or DEFAULT_TOLERANCES
    grid = np.asarray(ratios, dtype=float)
    e_c = t1.e_c if e_c2 is None else e_c2

    def evaluate(ratio: float) -> Tuple[np.ndarray, np.ndarray]:
        t2 = TransmonParams.from_ratio(e_c, ratio, t1.n_g, t1.n_max)
        energies = chain_levels(t1, t2, rabi, g1, g2, m, tol)
        return energies, np.zeros(energies.size, dtype=int)

    energies = np.array([evaluate(r)[0] for r in grid])
    sectors = np.zeros(energies.shape, dtype=int)
    scan = SpectrumScan(SWEEP_VARIABLE, grid, energies, np.ones(energies.shape, dtype=int))
    if detect:
        scan.crossings = find_avoided_crossings(grid, energies, sectors, evaluate, tol)
        first = scan.first_crossing()
        if first is not None:
            logger.info(
                "chain: lowest avoided crossing at E_J/E_C=%.4f, E=%.5f, gap %.3e",
                first.location, first.energy, first.gap,
            )
    return scan