"""Rotating-wave two-qubit exchange Hamiltonian with its closed-form eigensystem."""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..linalg import HilbertLayout, embed, embed_product, pauli, sigma_pm
from ..model import SystemParams
from ..settings import DEFAULT_TOLERANCES, Tolerances
from .dispersive import effective_model

logger = logging.getLogger("rabibus")

TWO_QUBITS = HilbertLayout.of(("q1", 2), ("q2", 2))
STATE_NAMES = ("G", "E1", "E2", "E3")


@dataclass
class RwaSystem:
    """H = sum_n omega~_n/2 sz_n - J_eff (s+_1 s-_2 + h.c.) and its eigenpairs.

    `states` holds the eigenvectors as columns in the order of `energies`
    (ascending): |G> = |gg>, |E1>, |E2>, |E3> = |ee>.
    """
    hamiltonian: np.ndarray
    energies: np.ndarray
    states: np.ndarray
    names: List[str]
    theta: float
    j_eff: float
    omega_tilde: np.ndarray
    ratio: float

    def state(self, name: str) -> np.ndarray:
        return self.states[:, self.names.index(name)]


def rwa_hamiltonian(omega_tilde: np.ndarray, j: float) -> np.ndarray:
    h = 0.5 * omega_tilde[0] * embed(pauli("z"), TWO_QUBITS, "q1")
    h = h + 0.5 * omega_tilde[1] * embed(pauli("z"), TWO_QUBITS, "q2")
    hop = embed_product(TWO_QUBITS, {"q1": sigma_pm(+1), "q2": sigma_pm(-1)})
    return h - j * (hop + hop.conj().T)


def rwa_eigensystem(omega_tilde: np.ndarray, j: float) -> RwaSystem:
    w1, w2 = float(omega_tilde[0]), float(omega_tilde[1])
    theta = float(np.arctan2(2.0 * j, w1 - w2))
    split = 0.5 * np.sqrt(4.0 * j ** 2 + (w1 - w2) ** 2)
    # basis order |ee>, |eg>, |ge>, |gg>
    c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
    vectors = {
        "G": np.array([0, 0, 0, 1], dtype=complex),
        "E1": np.array([0, s, c, 0], dtype=complex),
        "E2": np.array([0, c, -s, 0], dtype=complex),
        "E3": np.array([1, 0, 0, 0], dtype=complex),
    }
    values = {"G": -0.5 * (w1 + w2), "E1": -split, "E2": split, "E3": 0.5 * (w1 + w2)}
    names = sorted(STATE_NAMES, key=lambda name: values[name])
    return RwaSystem(
        hamiltonian=rwa_hamiltonian(np.array([w1, w2]), j),
        energies=np.array([values[n] for n in names]),
        states=np.column_stack([vectors[n] for n in names]),
        names=list(names),
        theta=theta,
        j_eff=float(j),
        omega_tilde=np.array([w1, w2]),
        ratio=abs(j) / min(abs(w1), abs(w2)),
    )


def rwa_two_qubit(
    s: SystemParams,
    levels: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> RwaSystem:
    """Exchange-only two-qubit model with dressed frequencies and J_eff from the QRS."""
    tol = tol or DEFAULT_TOLERANCES
    model = effective_model(s, levels, tol)
    system = rwa_eigensystem(model.omega_tilde, model.j_eff)
    if system.ratio > tol.validity:
        logger.warning("J_eff / omega~ = %.3g is not small; rotating-wave exchange is questionable", system.ratio)
    return system
