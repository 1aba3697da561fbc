"""Dressed-basis dissipation channels with frequency-dependent rates."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import InvalidRateError
from ..linalg import (
    CAVITY,
    QRS_QUBIT,
    EigenSystem,
    HilbertLayout,
    embed,
    hermitian_eig,
    pauli,
    qubit_label,
    quadrature,
    rotate_clusters,
    sigma_pm,
)
from ..settings import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger("rabibus")

UP = "up"
DOWN = "down"
# |<phi_j|O|phi_k>| below this is a selection-rule zero
MATRIX_ELEMENT_FLOOR = 1e-12


@dataclass(frozen=True)
class DissipationRates:
    """Bare rates in units of omega_cav."""
    gamma_pump: float = 0.0
    gamma_out: float = 0.0
    gamma_x: float = 0.0
    gamma_z: float = 0.0
    gamma_cav: float = 0.0

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value < 0:
                raise InvalidRateError(f"{name} must be >= 0, got {value}")

    @classmethod
    def from_dict(cls, data: Dict[str, float]) -> "DissipationRates":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise InvalidRateError(f"unknown rate(s): {', '.join(sorted(unknown))}")
        return cls(**{k: float(v) for k, v in data.items()})

    @property
    def smallest_nonzero(self) -> float:
        values = [v for v in self.__dict__.values() if v > 0]
        return min(values) if values else 0.0


@dataclass(frozen=True)
class DressedTransition:
    lower: int
    upper: int
    rate: float


@dataclass
class LindbladChannel:
    """One bare noise operator resolved into dressed jumps.

    Jump operators are built on demand from `basis`: |phi_upper><phi_lower|
    for the upward (pump) direction, |phi_lower><phi_upper| otherwise.
    """
    label: str
    direction: str
    basis: np.ndarray
    transitions: List[DressedTransition] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.transitions)

    def endpoints(self, t: DressedTransition) -> Tuple[int, int]:
        """(target, source) eigenstate indices of a jump."""
        return (t.upper, t.lower) if self.direction == UP else (t.lower, t.upper)

    def operator(self, i: int) -> np.ndarray:
        target, source = self.endpoints(self.transitions[i])
        return np.outer(self.basis[:, target], self.basis[:, source].conj())

    def rate_matrix(self) -> np.ndarray:
        """G[a, b]: total rate of jumps b -> a."""
        d = self.basis.shape[1]
        gains = np.zeros((d, d))
        for t in self.transitions:
            target, source = self.endpoints(t)
            gains[target, source] += t.rate
        return gains

    @property
    def total_rate(self) -> float:
        return float(sum(t.rate for t in self.transitions))


def dressed_channel(
    eig: EigenSystem,
    label: str,
    op: np.ndarray,
    omega_bare: float,
    gamma: float,
    direction: str = DOWN,
) -> LindbladChannel:
    """Gamma^{jk} = gamma (eps_kj / omega_bare) |<phi_j|op|phi_k>|^2 for every k > j with eps_kj > 0."""
    if omega_bare <= 0:
        raise InvalidRateError(f"channel {label!r} needs a positive bare frequency, got {omega_bare}")
    if gamma < 0:
        raise InvalidRateError(f"channel {label!r} has negative rate {gamma}")
    if direction not in (UP, DOWN):
        raise InvalidRateError(f"channel direction must be {UP!r} or {DOWN!r}, got {direction!r}")
    channel = LindbladChannel(label, direction, eig.vectors)
    if gamma == 0:
        return channel
    elements = eig.in_eigenbasis(op)
    values = eig.values
    for j in range(eig.dim):
        for k in range(j + 1, eig.dim):
            eps = values[k] - values[j]
            if eps <= 0 or abs(elements[j, k]) < MATRIX_ELEMENT_FLOOR:
                continue
            rate = gamma * eps / omega_bare * abs(elements[j, k]) ** 2
            channel.transitions.append(DressedTransition(j, k, float(rate)))
    logger.debug("channel %s: %d dressed transitions, total rate %.3e", label, len(channel), channel.total_rate)
    return channel


def bare_operators(layout: HilbertLayout, omegas: Dict[str, float]) -> Dict[str, Tuple[np.ndarray, float]]:
    """Bare noise operators of the canonical layout with their reference frequencies."""
    ops = {
        "x1": (embed(pauli("x"), layout, qubit_label(1)), omegas["q1"]),
        "x2": (embed(pauli("x"), layout, qubit_label(2)), omegas["q2"]),
    }
    if QRS_QUBIT in layout.labels:
        ops["xp"] = (embed(pauli("x"), layout, QRS_QUBIT), omegas["p"])
        ops["zp"] = (embed(pauli("z"), layout, QRS_QUBIT), omegas["p"])
    if CAVITY in layout.labels:
        ops["b"] = (embed(quadrature(layout.dim(CAVITY)), layout, CAVITY), omegas["cav"])
    return ops


CHANNEL_RATES = {"x1": "gamma_pump", "x2": "gamma_out", "xp": "gamma_x", "zp": "gamma_z", "b": "gamma_cav"}


def dressed_channels(
    eig: EigenSystem,
    layout: HilbertLayout,
    omegas: Dict[str, float],
    rates: DissipationRates,
) -> List[LindbladChannel]:
    """x1 pumps upward; x2, xp, zp and b relax downward."""
    channels = []
    for label, (op, omega) in bare_operators(layout, omegas).items():
        gamma = getattr(rates, CHANNEL_RATES[label])
        direction = UP if label == "x1" else DOWN
        channels.append(dressed_channel(eig, label, op, omega, gamma, direction))
    return channels


def qubit_excitations(layout: HilbertLayout) -> np.ndarray:
    """sum_n 2^n s+_n s-_n over the coupled qubits, a tie-breaker for degenerate levels."""
    total = np.zeros((layout.total_dim, layout.total_dim), dtype=complex)
    weight = 1.0
    for label in layout.labels:
        if label in (QRS_QUBIT, CAVITY) or layout.dim(label) != 2:
            continue
        total = total + weight * embed(sigma_pm(+1) @ sigma_pm(-1), layout, label)
        weight *= 2.0
    return total


def dressed_eigensystem(h: np.ndarray, layout: HilbertLayout, tol: Optional[Tolerances] = None) -> EigenSystem:
    """Eigenbasis for the dressed channels; degenerate levels are aligned with bare qubit excitations."""
    tol = tol or DEFAULT_TOLERANCES
    eig = hermitian_eig(h, tol.hermiticity)
    return rotate_clusters(eig, qubit_excitations(layout), tol.degeneracy)
