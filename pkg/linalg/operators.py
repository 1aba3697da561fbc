"""Standard operators and tensor-product embedding.

Qubits are stored in the order (|e>, |g>) so that sigma_z|e> = +|e> and
sigma_plus|g> = |e>.  Matrices are dense complex numpy arrays in row-major
order.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..errors import InvalidDimensionError

QRS_QUBIT = "qrs"
CAVITY = "cavity"


def qubit_label(n: int) -> str:
    """Layout label of the n-th coupled qubit (1-based)."""
    return f"q{n}"


@dataclass(frozen=True)
class HilbertLayout:
    """Ordered tensor factors, each a (label, dimension) pair."""
    factors: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.factors]
        if not labels:
            raise InvalidDimensionError("layout needs at least one factor")
        if len(set(labels)) != len(labels):
            raise InvalidDimensionError(f"duplicate factor labels in {labels}")
        for label, dim in self.factors:
            if int(dim) < 1:
                raise InvalidDimensionError(f"factor {label!r} has dimension {dim}")

    @classmethod
    def of(cls, *factors: Tuple[str, int]) -> "HilbertLayout":
        return cls(tuple((str(label), int(dim)) for label, dim in factors))

    @classmethod
    def canonical(cls, n_fock: int, n_qubits: int = 2) -> "HilbertLayout":
        """[QRS-qubit(2), cavity(n_fock), q1(2), ..., qN(2)]."""
        factors = [(QRS_QUBIT, 2), (CAVITY, n_fock)]
        factors += [(qubit_label(n), 2) for n in range(1, n_qubits + 1)]
        return cls.of(*factors)

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.factors]

    @property
    def dims(self) -> List[int]:
        return [dim for _, dim in self.factors]

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        for i, (name, _) in enumerate(self.factors):
            if name == label:
                return i
        raise InvalidDimensionError(f"unknown factor {label!r}; layout has {self.labels}")

    def dim(self, label: str) -> int:
        return self.factors[self.index(label)][1]

    def __len__(self) -> int:
        return len(self.factors)


def annihilation(n_fock: int) -> np.ndarray:
    """Truncated bosonic annihilation operator b with <i|b|i+1> = sqrt(i+1)."""
    if n_fock < 2:
        raise InvalidDimensionError(f"n_fock must be >= 2, got {n_fock}")
    return np.diag(np.sqrt(np.arange(1, n_fock)), k=1).astype(complex)


def number(n_fock: int) -> np.ndarray:
    return np.diag(np.arange(n_fock)).astype(complex)


def quadrature(n_fock: int) -> np.ndarray:
    """b + b^dagger."""
    b = annihilation(n_fock)
    return b + b.conj().T


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix in the (|e>, |g>) basis."""
    try:
        return _PAULI[axis.lower()].copy()
    except KeyError:
        raise InvalidDimensionError(f"unknown Pauli axis {axis!r}") from None


def sigma_pm(sign: int) -> np.ndarray:
    """sigma_plus (sign > 0) or sigma_minus (sign < 0)."""
    if sign == 0:
        raise InvalidDimensionError("sigma_pm sign must be +1 or -1")
    s = 1 if sign > 0 else -1
    return 0.5 * (_PAULI["x"] + s * 1j * _PAULI["y"])


def embed(op: np.ndarray, layout: HilbertLayout, factor: str) -> np.ndarray:
    """Kronecker product of op on `factor` with identities elsewhere."""
    return embed_product(layout, {factor: op})


def embed_product(layout: HilbertLayout, ops: Dict[str, np.ndarray]) -> np.ndarray:
    """Tensor product placing each operator on its factor, identity on the rest."""
    for label in ops:
        layout.index(label)
    pieces: List[np.ndarray] = []
    for label, dim in layout.factors:
        op = ops.get(label)
        if op is None:
            pieces.append(np.eye(dim, dtype=complex))
            continue
        op = np.asarray(op, dtype=complex)
        if op.shape != (dim, dim):
            raise InvalidDimensionError(
                f"operator of shape {op.shape} does not fit factor {label!r} of dimension {dim}"
            )
        pieces.append(op)
    return reduce(np.kron, pieces)


def basis_vector(dim: int, index: int) -> np.ndarray:
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return vec


def tensor_state(vectors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, [np.asarray(v, dtype=complex) for v in vectors])


def dagger(op: np.ndarray) -> np.ndarray:
    return op.conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
