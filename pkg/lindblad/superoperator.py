"""Vectorized Liouvillians.

Density matrices are vectorized row-major, vec(rho)[a*d + b] = rho[a, b],
so that vec(A rho B) = (A kron B^T) vec(rho) and O rho O^dag maps to O kron O*.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
import scipy.sparse

from ..errors import InvalidDimensionError
from ..linalg import EigenSystem
from .channels import LindbladChannel

LAB = "lab"
EIGEN = "eigen"

Matrix = Union[np.ndarray, scipy.sparse.spmatrix]


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvec(v: np.ndarray, d: Optional[int] = None) -> np.ndarray:
    d = int(round(np.sqrt(v.size))) if d is None else d
    if d * d != v.size:
        raise InvalidDimensionError(f"vector of length {v.size} is not a vectorized {d}x{d} matrix")
    return np.asarray(v).reshape(d, d)


def column_major_permutation(d: int) -> np.ndarray:
    """perm[c] = row-major index of the element at column-major index c."""
    return np.arange(d * d).reshape(d, d).T.reshape(-1)


def to_column_major(l_row: np.ndarray, d: int) -> np.ndarray:
    perm = column_major_permutation(d)
    return np.asarray(l_row)[np.ix_(perm, perm)]


def to_row_major(l_col: np.ndarray, d: int) -> np.ndarray:
    perm = np.argsort(column_major_permutation(d))
    return np.asarray(l_col)[np.ix_(perm, perm)]


@dataclass
class Superoperator:
    """Liouvillian acting on row-major vectorized density matrices.

    In the eigen frame `basis` holds the Hamiltonian eigenvectors V and the
    matrix acts on vec(V^dag rho V); in the lab frame `basis` is None.
    """
    matrix: Matrix
    dim: int
    frame: str = LAB
    basis: Optional[np.ndarray] = None

    @property
    def is_sparse(self) -> bool:
        return scipy.sparse.issparse(self.matrix)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray() if self.is_sparse else np.asarray(self.matrix)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """L rho in this superoperator's frame."""
        return unvec(self.matrix @ vec(rho), self.dim)

    def trace_error(self) -> float:
        """max |vec(I)^T L|, zero for a trace-preserving generator."""
        diag = np.arange(self.dim) * (self.dim + 1)
        rows = self.matrix[diag, :]
        rows = rows.toarray() if scipy.sparse.issparse(rows) else np.asarray(rows)
        return float(np.max(np.abs(rows.sum(axis=0))))

    def norm(self) -> float:
        """Largest entry modulus."""
        if self.is_sparse:
            return float(abs(self.matrix).max()) if self.matrix.nnz else 0.0
        return float(np.max(np.abs(self.matrix)))

    def to_lab(self, rho: np.ndarray) -> np.ndarray:
        if self.basis is None:
            return rho
        return self.basis @ rho @ self.basis.conj().T

    def from_lab(self, rho: np.ndarray) -> np.ndarray:
        if self.basis is None:
            return np.asarray(rho, dtype=complex)
        return self.basis.conj().T @ rho @ self.basis


def _aggregate(channels: Sequence[LindbladChannel], d: int):
    """Summed gain matrix G[a, b] (b -> a) and outflow rates r_b over all channels."""
    gains = np.zeros((d, d))
    for channel in channels:
        if channel.basis.shape[0] != d:
            raise InvalidDimensionError(
                f"channel {channel.label!r} has basis dimension {channel.basis.shape[0]}, Hamiltonian {d}"
            )
        gains += channel.rate_matrix()
    return gains, gains.sum(axis=0)


def liouvillian(h: np.ndarray, channels: Sequence[LindbladChannel]) -> Superoperator:
    """L = -i H(x)I + i I(x)H^T + sum Gamma [O(x)O* - 1/2 O^dag O(x)I - 1/2 I(x)(O^dag O)^T].

    Dressed jumps |phi_a><phi_b| share one eigenbasis, so their dissipators are
    summed through the gain matrix G and outflow rates r instead of one
    Kronecker product per transition.
    """
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)
    matrix = np.kron(-1j * h, eye) + np.kron(eye, (1j * h).T)
    if channels:
        gains, outflow = _aggregate(channels, d)
        v = channels[0].basis
        for channel in channels[1:]:
            if channel.basis is not v and not np.allclose(channel.basis, v):
                raise InvalidDimensionError("all channels must share one dressed basis")
        decay = (v * outflow[np.newaxis, :]) @ v.conj().T
        matrix += np.kron(-0.5 * decay, eye)
        matrix += np.kron(eye, (-0.5 * decay).T)
        # columns phi_a (x) phi_a* for every level a
        pops = np.einsum("ia,ja->ija", v, v.conj()).reshape(d * d, d)
        matrix += pops @ gains @ pops.conj().T
    return Superoperator(matrix, d, LAB)


def liouvillian_column_major(h: np.ndarray, channels: Sequence[LindbladChannel]) -> np.ndarray:
    """Same generator for column-major vec: -i I(x)H + i H^T(x)I + sum Gamma [O*(x)O - ...], one term per jump."""
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)
    matrix = -1j * np.kron(eye, h) + 1j * np.kron(h.T, eye)
    for channel in channels:
        for i, t in enumerate(channel.transitions):
            o = channel.operator(i)
            odo = o.conj().T @ o
            matrix += t.rate * (np.kron(o.conj(), o) - 0.5 * np.kron(eye, odo) - 0.5 * np.kron(odo.T, eye))
    return matrix


def liouvillian_eigenframe(eig: EigenSystem, channels: Sequence[LindbladChannel]) -> Superoperator:
    """The Liouvillian in the Hamiltonian eigenbasis, stored sparse.

    There every jump is a matrix unit, so coherence (a, c) only decays with
    -i(eps_a - eps_c) - (r_a + r_c)/2 and populations couple through G.
    """
    d = eig.dim
    gains, outflow = _aggregate(channels, d) if channels else (np.zeros((d, d)), np.zeros(d))
    eps = eig.values
    diagonal = (
        -1j * (eps[:, np.newaxis] - eps[np.newaxis, :])
        - 0.5 * (outflow[:, np.newaxis] + outflow[np.newaxis, :])
    ).reshape(-1)
    pop = np.arange(d) * (d + 1)
    rows, cols = np.nonzero(gains)
    index = np.arange(d * d)
    # duplicate (row, col) pairs are summed by the COO -> CSR conversion
    matrix = scipy.sparse.coo_matrix(
        (
            np.concatenate([diagonal, gains[rows, cols].astype(complex)]),
            (np.concatenate([index, pop[rows]]), np.concatenate([index, pop[cols]])),
        ),
        shape=(d * d, d * d),
    ).tocsr()
    return Superoperator(matrix, d, EIGEN, eig.vectors)


def apply_direct(h: np.ndarray, channels: Sequence[LindbladChannel], rho: np.ndarray) -> np.ndarray:
    """-i[H, rho] + sum Gamma (O rho O^dag - 1/2 {O^dag O, rho}), one term per dressed jump."""
    rho = np.asarray(rho, dtype=complex)
    out = -1j * (h @ rho - rho @ h)
    for channel in channels:
        for i, t in enumerate(channel.transitions):
            o = channel.operator(i)
            odo = o.conj().T @ o
            out += t.rate * (o @ rho @ o.conj().T - 0.5 * (odo @ rho + rho @ odo))
    return out
