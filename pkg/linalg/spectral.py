"""Hermitian eigendecomposition and exact propagation."""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from ..errors import InvalidDimensionError, NonHermitianError
from ..settings import DEFAULT_TOLERANCES


@dataclass
class EigenSystem:
    """Ascending eigenvalues with orthonormal eigenvectors stored as columns."""
    values: np.ndarray
    vectors: np.ndarray
    parities: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def __len__(self) -> int:
        return self.dim

    def vector(self, j: int) -> np.ndarray:
        return self.vectors[:, j]

    def in_eigenbasis(self, op: np.ndarray) -> np.ndarray:
        """Matrix elements <j|op|k> between eigenvectors."""
        return self.vectors.conj().T @ op @ self.vectors

    def lowest(self, k: int) -> "EigenSystem":
        parities = None if self.parities is None else self.parities[:k].copy()
        return EigenSystem(self.values[:k].copy(), self.vectors[:, :k].copy(), parities)


def check_square(a: np.ndarray, name: str = "matrix") -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidDimensionError(f"{name} must be square, got shape {a.shape}")


def hermiticity_error(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-modulus entry is real and positive."""
    idx = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[idx, np.arange(vectors.shape[1])]
    phases = np.conj(pivots) / np.abs(pivots)
    return vectors * phases[np.newaxis, :]


def hermitian_eig(a: np.ndarray, tol: Optional[float] = None) -> EigenSystem:
    """Full eigendecomposition of a Hermitian matrix with phase-fixed vectors."""
    a = np.asarray(a, dtype=complex)
    check_square(a)
    tol = DEFAULT_TOLERANCES.hermiticity if tol is None else tol
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    err = hermiticity_error(a)
    if err > tol * scale:
        raise NonHermitianError(f"matrix is not Hermitian (max |A - A^dagger| = {err:.3e})")
    values, vectors = scipy.linalg.eigh(a)
    return EigenSystem(values=np.asarray(values, dtype=float), vectors=fix_phases(vectors))


def _check_state(eig: EigenSystem, psi0: np.ndarray) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=complex).reshape(-1)
    if psi0.shape[0] != eig.dim:
        raise InvalidDimensionError(
            f"state of dimension {psi0.shape[0]} does not match Hamiltonian dimension {eig.dim}"
        )
    return psi0


def evolve_state(eig: EigenSystem, psi0: np.ndarray, t: float) -> np.ndarray:
    """psi(t) = V exp(-i Lambda t) V^dagger psi0."""
    psi0 = _check_state(eig, psi0)
    coeffs = eig.vectors.conj().T @ psi0
    return eig.vectors @ (np.exp(-1j * eig.values * t) * coeffs)


def evolve_states(eig: EigenSystem, psi0: np.ndarray, times: Sequence[float]) -> np.ndarray:
    """States at every time, shape (len(times), dim)."""
    psi0 = _check_state(eig, psi0)
    times = np.asarray(times, dtype=float)
    coeffs = eig.vectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, eig.values)) * coeffs[np.newaxis, :]
    return phases @ eig.vectors.T


def propagator(eig: EigenSystem, t: float) -> np.ndarray:
    """U(t) = exp(-i H t)."""
    return (eig.vectors * np.exp(-1j * eig.values * t)[np.newaxis, :]) @ eig.vectors.conj().T


def degenerate_clusters(values: np.ndarray, threshold: float) -> List[List[int]]:
    """Runs of consecutive eigenvalues closer than `threshold`."""
    clusters: List[List[int]] = [[0]] if len(values) else []
    for j in range(1, len(values)):
        if values[j] - values[j - 1] < threshold:
            clusters[-1].append(j)
        else:
            clusters.append([j])
    return clusters


def rotate_clusters(eig: EigenSystem, op: np.ndarray, threshold: Optional[float] = None) -> EigenSystem:
    """Diagonalize a commuting Hermitian operator inside every degenerate cluster."""
    threshold = DEFAULT_TOLERANCES.degeneracy if threshold is None else threshold
    vectors = eig.vectors.copy()
    for cluster in degenerate_clusters(eig.values, threshold):
        if len(cluster) < 2:
            continue
        sub = vectors[:, cluster]
        block = sub.conj().T @ op @ sub
        _, rotation = scipy.linalg.eigh(0.5 * (block + block.conj().T))
        vectors[:, cluster] = fix_phases(sub @ rotation)
    return EigenSystem(eig.values, vectors, eig.parities)
