"""Density matrices, reduced states and entanglement entropy."""

from typing import Iterable, List, Optional

import numpy as np
import scipy.linalg

from ..errors import InvalidDimensionError, NonHermitianError
from .operators import HilbertLayout
from .spectral import check_square, hermiticity_error

PSD_TOLERANCE = 1e-10
ENTROPY_CUTOFF = 1e-14


def density(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def expectation(op: np.ndarray, psi: np.ndarray) -> float:
    """Real part of <psi|op|psi>."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return float(np.real(np.vdot(psi, op @ psi)))


def _split(layout: HilbertLayout, keep: Iterable[str]):
    keep_set = set(keep)
    if not keep_set:
        raise InvalidDimensionError("partial trace needs at least one kept factor")
    for label in keep_set:
        layout.index(label)
    kept: List[int] = [i for i, label in enumerate(layout.labels) if label in keep_set]
    traced: List[int] = [i for i in range(len(layout)) if i not in kept]
    dims = layout.dims
    d_keep = int(np.prod([dims[i] for i in kept]))
    d_trace = int(np.prod([dims[i] for i in traced])) if traced else 1
    return kept, traced, d_keep, d_trace


def partial_trace(rho: np.ndarray, layout: HilbertLayout, keep: Iterable[str]) -> np.ndarray:
    """Reduced density matrix over the kept factors, in layout order."""
    rho = np.asarray(rho, dtype=complex)
    check_square(rho, "density matrix")
    if rho.shape[0] != layout.total_dim:
        raise InvalidDimensionError(
            f"density matrix of dimension {rho.shape[0]} does not match layout dimension {layout.total_dim}"
        )
    kept, traced, d_keep, d_trace = _split(layout, keep)
    n = len(layout)
    tensor = rho.reshape(layout.dims + layout.dims)
    order = kept + traced + [i + n for i in kept] + [i + n for i in traced]
    tensor = tensor.transpose(order).reshape(d_keep, d_trace, d_keep, d_trace)
    return np.einsum("ajbj->ab", tensor)


def reduced_density(psi: np.ndarray, layout: HilbertLayout, keep: Iterable[str]) -> np.ndarray:
    """Partial trace of the pure state |psi><psi| without forming the full projector."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != layout.total_dim:
        raise InvalidDimensionError(
            f"state of dimension {psi.shape[0]} does not match layout dimension {layout.total_dim}"
        )
    kept, traced, d_keep, d_trace = _split(layout, keep)
    amplitudes = psi.reshape(layout.dims).transpose(kept + traced).reshape(d_keep, d_trace)
    return amplitudes @ amplitudes.conj().T


def von_neumann_entropy(rho: np.ndarray, tol: Optional[float] = None) -> float:
    """S = -sum(lambda ln lambda) over eigenvalues above 1e-14 (natural log)."""
    rho = np.asarray(rho, dtype=complex)
    check_square(rho, "density matrix")
    tol = PSD_TOLERANCE if tol is None else tol
    if hermiticity_error(rho) > tol:
        raise NonHermitianError("density matrix is not Hermitian")
    values = scipy.linalg.eigvalsh(rho)
    if values.min() < -tol:
        raise NonHermitianError(f"density matrix has negative eigenvalue {values.min():.3e}")
    values = values[values > ENTROPY_CUTOFF]
    return float(-np.sum(values * np.log(values)))


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of rho - sigma."""
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    diff = 0.5 * (diff + diff.conj().T)
    return float(0.5 * np.sum(np.abs(scipy.linalg.eigvalsh(diff))))
