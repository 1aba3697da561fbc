"""Dispersive effective Hamiltonians in the QRS eigenbasis.

Every effective operator lives on [levels(K), q1, ..., qN], where the first
factor is spanned by the K lowest Rabi eigenstates |j>.  For a retained
level j the qubit block is

    omega_j + sum_n omega_qn/2 sz_n
    + 1/2 sum_{k != j} |chi_jk|^2 sum_{n,n'} g_n g_n'
        [ (s+_n / D^n_kj - s-_n / d^n_kj) sx_n' - sx_n' (s+_n / d^n_kj - s-_n / D^n_kj) ]

with D^n_kj = omega_qn - omega_kj and d^n_kj = omega_qn + omega_kj.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import NearResonanceError
from ..linalg import EigenSystem, HilbertLayout, embed, embed_product, pauli, qubit_label, quadrature, sigma_pm
from ..model import RabiParams, SystemParams, rabi_eigensystem
from ..settings import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger("rabibus")

LEVELS = "levels"
# chi elements below this are treated as exact selection-rule zeros
CHI_FLOOR = 1e-12


def effective_layout(n_levels: int, n_qubits: int) -> HilbertLayout:
    factors = [(LEVELS, n_levels)] + [(qubit_label(n), 2) for n in range(1, n_qubits + 1)]
    return HilbertLayout.of(*factors)


def chi_elements(rabi_eig: EigenSystem, K: Optional[int] = None) -> np.ndarray:
    """chi_kj = <k|(b + b^dag)|j> over the K lowest Rabi eigenstates."""
    n_fock = rabi_eig.dim // 2
    K = rabi_eig.dim if K is None else min(int(K), rabi_eig.dim)
    layout = RabiParams(omega_p=1.0, g_p=0.0, n_fock=n_fock).layout
    x = embed(quadrature(n_fock), layout, "cavity")
    sub = rabi_eig.vectors[:, :K]
    chi = sub.conj().T @ x @ sub
    if np.max(np.abs(chi.imag)) < 1e-10:
        return chi.real.copy()
    return chi


@dataclass
class EffectiveModel:
    """Dispersive data of one parameter point.

    `chi` and `energies` cover every Rabi level; `levels` is how many of them
    the coupling sums used (all of them unless restricted).
    """
    params: SystemParams
    energies: np.ndarray
    chi: np.ndarray
    levels: int
    j_eff: float
    omega_tilde: np.ndarray
    validity_ratio: float

    @property
    def omega_10(self) -> float:
        return float(self.energies[1] - self.energies[0])

    @property
    def chi01_sq(self) -> float:
        return float(abs(self.chi[0, 1]) ** 2)

    def transition(self, k: int, j: int) -> float:
        """omega_kj = omega_k - omega_j."""
        return float(self.energies[k] - self.energies[j])

    def detuning(self, n: int, k: int, j: int) -> float:
        """Delta^n_kj = omega_qn - omega_kj (n is 1-based)."""
        return self.params.qubits[n - 1].omega_q - self.transition(k, j)

    def detuning_sum(self, n: int, k: int, j: int) -> float:
        """delta^n_kj = omega_qn + omega_kj (n is 1-based)."""
        return self.params.qubits[n - 1].omega_q + self.transition(k, j)


def _guard(value: float, what: str, tol: Tolerances) -> float:
    if abs(value) < tol.resonance:
        raise NearResonanceError(f"{what} = {value:.3e} is within {tol.resonance:g} of resonance", detuning=value)
    return value


def _levels(rabi_eig: EigenSystem, levels: Optional[int]) -> int:
    return rabi_eig.dim if levels is None else max(2, min(int(levels), rabi_eig.dim))


def _j_eff(s: SystemParams, energies: np.ndarray, chi: np.ndarray, levels: int, tol: Tolerances) -> float:
    if s.n_qubits < 2:
        return 0.0
    g1, g2 = s.couplings[:2]
    w1, w2 = s.omegas[:2]
    total = 0.0
    for k in range(1, levels):
        c2 = abs(chi[0, k]) ** 2
        if c2 < CHI_FLOOR ** 2:
            continue
        w = energies[k] - energies[0]
        total += c2 * (
            1.0 / _guard(w1 + w, "delta^1", tol)
            + 1.0 / _guard(w2 + w, "delta^2", tol)
            - 1.0 / _guard(w1 - w, "Delta^1", tol)
            - 1.0 / _guard(w2 - w, "Delta^2", tol)
        )
    return 0.5 * g1 * g2 * total


def _omega_tilde(s: SystemParams, energies: np.ndarray, chi: np.ndarray, levels: int, tol: Tolerances) -> np.ndarray:
    shifted = []
    for n, q in enumerate(s.qubits, 1):
        shift = 0.0
        for k in range(1, levels):
            c2 = abs(chi[0, k]) ** 2
            if c2 < CHI_FLOOR ** 2:
                continue
            w = energies[k] - energies[0]
            shift += c2 * (1.0 / _guard(q.omega_q - w, f"Delta^{n}", tol) + 1.0 / _guard(q.omega_q + w, f"delta^{n}", tol))
        shifted.append(q.omega_q + q.g ** 2 * shift)
    return np.array(shifted)


def _validity(s: SystemParams, energies: np.ndarray, chi: np.ndarray) -> float:
    w10 = energies[1] - energies[0]
    c2 = abs(chi[0, 1]) ** 2
    worst = 0.0
    for n, qn in enumerate(s.qubits):
        for qm in s.qubits[n:]:
            detuning = min(abs(qn.omega_q - w10), abs(qm.omega_q - w10))
            if detuning == 0.0:
                return float("inf")
            worst = max(worst, qn.g * qm.g * c2 / detuning)
    return worst / w10


def effective_model(
    s: SystemParams,
    levels: Optional[int] = None,
    tol: Optional[Tolerances] = None,
    rabi_eig: Optional[EigenSystem] = None,
) -> EffectiveModel:
    """chi, J_eff, dressed qubit frequencies and the validity ratio."""
    tol = tol or DEFAULT_TOLERANCES
    if rabi_eig is None:
        rabi_eig = rabi_eigensystem(s.rabi, tol)
    chi = chi_elements(rabi_eig)
    n_levels = _levels(rabi_eig, levels)
    ratio = _validity(s, rabi_eig.values, chi)
    if ratio > tol.validity:
        logger.warning("dispersive validity ratio %.3g exceeds %.3g at g_p=%g", ratio, tol.validity, s.rabi.g_p)
    return EffectiveModel(
        params=s,
        energies=rabi_eig.values.copy(),
        chi=chi,
        levels=n_levels,
        j_eff=_j_eff(s, rabi_eig.values, chi, n_levels, tol),
        omega_tilde=_omega_tilde(s, rabi_eig.values, chi, n_levels, tol),
        validity_ratio=ratio,
    )


def j_eff(s: SystemParams, levels: Optional[int] = None, tol: Optional[Tolerances] = None) -> float:
    """Effective qubit-qubit exchange on the QRS ground state.

    Sums the second-order coupling over the QRS levels k < levels (every
    level of the truncated Rabi spectrum by default); levels=2 keeps only
    the first excited state.
    """
    tol = tol or DEFAULT_TOLERANCES
    rabi_eig = rabi_eigensystem(s.rabi, tol)
    chi = chi_elements(rabi_eig)
    return _j_eff(s, rabi_eig.values, chi, _levels(rabi_eig, levels), tol)


def dressed_qubit_frequencies(s: SystemParams, levels: Optional[int] = None, tol: Optional[Tolerances] = None) -> np.ndarray:
    tol = tol or DEFAULT_TOLERANCES
    rabi_eig = rabi_eigensystem(s.rabi, tol)
    chi = chi_elements(rabi_eig)
    return _omega_tilde(s, rabi_eig.values, chi, _levels(rabi_eig, levels), tol)


def validity_ratio(s: SystemParams, tol: Optional[Tolerances] = None) -> float:
    """max g_n g_n' |chi_01|^2 / |Delta| divided by omega_10."""
    rabi_eig = rabi_eigensystem(s.rabi, tol)
    return _validity(s, rabi_eig.values, chi_elements(rabi_eig, 2))


def build_heff_n(
    s: SystemParams,
    K: int = 2,
    tol: Optional[Tolerances] = None,
    rabi_eig: Optional[EigenSystem] = None,
) -> np.ndarray:
    """Time-averaged effective Hamiltonian on [levels(K), q1..qN]."""
    tol = tol or DEFAULT_TOLERANCES
    if rabi_eig is None:
        rabi_eig = rabi_eigensystem(s.rabi, tol)
    K = min(int(K), rabi_eig.dim)
    energies = rabi_eig.values
    chi = chi_elements(rabi_eig, K)
    qubits = effective_layout(1, s.n_qubits)
    labels = [qubit_label(n) for n in range(1, s.n_qubits + 1)]
    sp = [embed(sigma_pm(+1), qubits, label) for label in labels]
    sm = [embed(sigma_pm(-1), qubits, label) for label in labels]
    sx = [embed(pauli("x"), qubits, label) for label in labels]
    bare = sum(0.5 * q.omega_q * embed(pauli("z"), qubits, label) for q, label in zip(s.qubits, labels))

    d_q = 2 ** s.n_qubits
    h = np.zeros((K * d_q, K * d_q), dtype=complex)
    for j in range(K):
        block = energies[j] * np.eye(d_q) + bare
        for k in range(K):
            c2 = abs(chi[j, k]) ** 2
            if k == j or c2 < CHI_FLOOR ** 2:
                continue
            w_kj = energies[k] - energies[j]
            for n, qn in enumerate(s.qubits):
                big = _guard(qn.omega_q - w_kj, f"Delta^{n + 1}_{k}{j}", tol)
                small = _guard(qn.omega_q + w_kj, f"delta^{n + 1}_{k}{j}", tol)
                left = sp[n] / big - sm[n] / small
                right = sp[n] / small - sm[n] / big
                for m, qm in enumerate(s.qubits):
                    if qn.g == 0.0 or qm.g == 0.0:
                        continue
                    block = block + 0.5 * c2 * qn.g * qm.g * (left @ sx[m] - sx[m] @ right)
        h[j * d_q:(j + 1) * d_q, j * d_q:(j + 1) * d_q] = block
    return h


def build_heff_two_level(s: SystemParams, tol: Optional[Tolerances] = None) -> np.ndarray:
    """H0 + 1/2 |chi_01|^2 S12 (x) Z_p + sum_n (omega~_n - omega_n)/2 sz_n on [levels(2), q1, q2].

    S12 = g1 g2 (1/d1 + 1/d2 - 1/D1 - 1/D2) sx1 sx2 + sum_n g_n^2 (1/dn - 1/Dn),
    Z_p = |1><1| - |0><0|, with D and d the detunings of the 1 <- 0 transition.
    """
    tol = tol or DEFAULT_TOLERANCES
    rabi_eig = rabi_eigensystem(s.rabi, tol)
    energies = rabi_eig.values
    chi = chi_elements(rabi_eig, 2)
    c2 = abs(chi[0, 1]) ** 2
    w10 = energies[1] - energies[0]
    layout = effective_layout(2, s.n_qubits)
    labels = [qubit_label(n) for n in range(1, s.n_qubits + 1)]

    big = [_guard(q.omega_q - w10, f"Delta^{n}_10", tol) for n, q in enumerate(s.qubits, 1)]
    small = [_guard(q.omega_q + w10, f"delta^{n}_10", tol) for n, q in enumerate(s.qubits, 1)]

    z_p = np.diag([-1.0, 1.0]).astype(complex)
    h = embed(np.diag(energies[:2]).astype(complex), layout, LEVELS)
    dim = layout.total_dim
    s12 = np.zeros((dim, dim), dtype=complex)
    for n, (q, label) in enumerate(zip(s.qubits, labels)):
        h = h + 0.5 * q.omega_q * embed(pauli("z"), layout, label)
        shift = c2 * q.g ** 2 * (1.0 / big[n] + 1.0 / small[n])
        h = h + 0.5 * shift * embed(pauli("z"), layout, label)
        s12 = s12 + q.g ** 2 * (1.0 / small[n] - 1.0 / big[n]) * np.eye(dim)
    if s.n_qubits >= 2:
        g1, g2 = s.couplings[:2]
        coupling = g1 * g2 * (1.0 / small[0] + 1.0 / small[1] - 1.0 / big[0] - 1.0 / big[1])
        s12 = s12 + coupling * embed_product(layout, {labels[0]: pauli("x"), labels[1]: pauli("x")})
    h = h + 0.5 * c2 * s12 @ embed(z_p, layout, LEVELS)
    return h
