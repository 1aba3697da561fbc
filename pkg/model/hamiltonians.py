"""Rabi and bus Hamiltonians, parity and exchange symmetry, reference states."""

import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..errors import InvalidParameterError, ParityClassificationError
from ..linalg import (
    CAVITY,
    QRS_QUBIT,
    EigenSystem,
    HilbertLayout,
    embed_product,
    hermitian_eig,
    number,
    pauli,
    quadrature,
    qubit_label,
    rotate_clusters,
)
from ..settings import DEFAULT_TOLERANCES, Tolerances
from .params import RabiParams, SystemParams

logger = logging.getLogger("rabibus")

_E = np.array([1.0, 0.0], dtype=complex)
_G = np.array([0.0, 1.0], dtype=complex)
_SQRT2 = np.sqrt(2.0)

TWO_QUBIT_STATES: Dict[str, np.ndarray] = {
    "gg": np.kron(_G, _G),
    "eg": np.kron(_E, _G),
    "ge": np.kron(_G, _E),
    "ee": np.kron(_E, _E),
    "D20": np.kron(_G, _G),
    "D21": (np.kron(_E, _G) + np.kron(_G, _E)) / _SQRT2,
    "D22": np.kron(_E, _E),
    "psi_plus": (np.kron(_E, _G) + np.kron(_G, _E)) / _SQRT2,
    "psi_minus": (np.kron(_E, _G) - np.kron(_G, _E)) / _SQRT2,
}


def rabi_terms(p: RabiParams, layout: HilbertLayout) -> np.ndarray:
    """Rabi Hamiltonian on the qrs and cavity factors of any layout containing them."""
    h = 0.5 * p.omega_p * embed_product(layout, {QRS_QUBIT: pauli("z")})
    h = h + p.omega_cav * embed_product(layout, {CAVITY: number(p.n_fock)})
    if p.g_p:
        h = h + p.g_p * embed_product(layout, {QRS_QUBIT: pauli("x"), CAVITY: quadrature(p.n_fock)})
    return h


def build_rabi(p: RabiParams) -> np.ndarray:
    """omega_p/2 sz + omega_cav b^dag b + g_p sx (b + b^dag) on [qrs, cavity]."""
    return rabi_terms(p, p.layout)


def build_total(s: SystemParams) -> np.ndarray:
    """Rabi bus plus sum_n omega_qn/2 sz_n + g_n sx_n (b + b^dag)."""
    layout = s.layout
    h = rabi_terms(s.rabi, layout)
    x = quadrature(s.rabi.n_fock)
    for n, q in enumerate(s.qubits, 1):
        label = qubit_label(n)
        h = h + 0.5 * q.omega_q * embed_product(layout, {label: pauli("z")})
        if q.g:
            h = h + q.g * embed_product(layout, {label: pauli("x"), CAVITY: x})
    return h


def parity_operator(layout: HilbertLayout) -> np.ndarray:
    """P = -exp(i pi b^dag b) sz_p prod_n sz_n over every qubit factor of the layout."""
    n_fock = layout.dim(CAVITY)
    ops = {CAVITY: np.diag((-1.0) ** np.arange(n_fock)).astype(complex), QRS_QUBIT: pauli("z")}
    for label in layout.labels:
        if label not in (CAVITY, QRS_QUBIT):
            ops[label] = pauli("z")
    return -embed_product(layout, ops)


def rabi_parity(p: RabiParams) -> np.ndarray:
    return parity_operator(p.layout)


def swap_operator(layout: HilbertLayout, a: str = "q1", b: str = "q2") -> np.ndarray:
    """Permutation exchanging two equal-dimension factors."""
    ia, ib = layout.index(a), layout.index(b)
    if layout.dims[ia] != layout.dims[ib]:
        raise InvalidParameterError(f"cannot swap factors {a!r} and {b!r} of different dimension")
    perm = np.arange(layout.total_dim).reshape(layout.dims).swapaxes(ia, ib).reshape(-1)
    return np.eye(layout.total_dim, dtype=complex)[perm]


def resolve_symmetries(
    eig: EigenSystem,
    ops: Sequence[np.ndarray],
    tol: Optional[Tolerances] = None,
) -> Tuple[EigenSystem, np.ndarray]:
    """Label eigenvectors by commuting +-1 symmetries.

    Inside each degenerate cluster the symmetries are diagonalized jointly
    (weights 1, 2, 4, ... keep the label combinations distinct) before the
    expectation values are read off.  Returns the rotated eigensystem and an
    integer label array of shape (dim, len(ops)).
    """
    tol = tol or DEFAULT_TOLERANCES
    combined = sum((2.0 ** i) * op for i, op in enumerate(ops))
    vectors = rotate_clusters(eig, combined, tol.degeneracy).vectors

    labels = np.zeros((eig.dim, len(ops)), dtype=int)
    for i, op in enumerate(ops):
        expect = np.real(np.einsum("ij,ij->j", vectors.conj(), op @ vectors))
        weak = np.flatnonzero(np.abs(expect) < tol.parity)
        if weak.size:
            j = int(weak[0])
            raise ParityClassificationError(
                f"eigenvector {j} (E={eig.values[j]:.9f}) has symmetry expectation {expect[j]:.4f}"
            )
        labels[:, i] = np.where(expect > 0, 1, -1)
    return EigenSystem(eig.values, vectors), labels


def classify_parity(eig: EigenSystem, parity: np.ndarray, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Parity label (+1/-1) of every eigenvector."""
    _, labels = resolve_symmetries(eig, [parity], tol)
    return labels[:, 0]


def with_parities(eig: EigenSystem, parity: np.ndarray, tol: Optional[Tolerances] = None) -> EigenSystem:
    """Eigensystem with degenerate clusters rotated onto parity eigenvectors and labels attached."""
    rotated, labels = resolve_symmetries(eig, [parity], tol)
    rotated.parities = labels[:, 0]
    return rotated


def rabi_eigensystem(p: RabiParams, tol: Optional[Tolerances] = None) -> EigenSystem:
    """Phase-fixed, parity-labelled eigenstates of the bare Rabi system."""
    tol = tol or DEFAULT_TOLERANCES
    eig = hermitian_eig(build_rabi(p), tol.hermiticity)
    return with_parities(eig, rabi_parity(p), tol)


def two_qubit_state(label: str) -> np.ndarray:
    try:
        return TWO_QUBIT_STATES[label].copy()
    except KeyError:
        raise InvalidParameterError(
            f"unknown two-qubit state {label!r}; expected one of {', '.join(TWO_QUBIT_STATES)}"
        ) from None


def named_state(label: str, rabi_eig: EigenSystem, qrs_level: int = 0) -> np.ndarray:
    """|qrs_level> (Rabi eigenstate) tensor a named two-qubit state, canonical layout."""
    if not 0 <= qrs_level < rabi_eig.dim:
        raise InvalidParameterError(f"QRS level {qrs_level} out of range [0, {rabi_eig.dim})")
    state = np.kron(rabi_eig.vector(qrs_level), two_qubit_state(label))
    return state / np.linalg.norm(state)


def rabi_gap(p: RabiParams) -> float:
    """omega_10 of the bare Rabi system at the given truncation."""
    values = scipy.linalg.eigvalsh(build_rabi(p))
    return float(values[1] - values[0])


def check_rabi_gap(p: RabiParams, claimed: float, rel_tol: float = 0.05) -> float:
    """Compute omega_10 and warn when it disagrees with a quoted value."""
    gap = rabi_gap(p)
    if abs(gap - claimed) > rel_tol * abs(claimed):
        logger.warning(
            "QRS gap omega_10 = %.6f at omega_p=%g, g_p=%g differs from the quoted %.4f",
            gap, p.omega_p, p.g_p, claimed,
        )
    return gap
