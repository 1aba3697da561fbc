"""Second-order Schrieffer-Wolff construction in the QRS eigenbasis."""

from typing import Optional, Tuple

import numpy as np

from ..linalg import EigenSystem, embed, pauli, qubit_label, sigma_pm
from ..model import SystemParams, rabi_eigensystem
from ..settings import DEFAULT_TOLERANCES, Tolerances
from .dispersive import CHI_FLOOR, LEVELS, _guard, chi_elements, effective_layout


def _pieces(s: SystemParams, K: int, tol: Tolerances, rabi_eig: Optional[EigenSystem]):
    if rabi_eig is None:
        rabi_eig = rabi_eigensystem(s.rabi, tol)
    K = min(int(K), rabi_eig.dim)
    energies = rabi_eig.values[:K]
    chi = chi_elements(rabi_eig, K)
    layout = effective_layout(K, s.n_qubits)
    return layout, energies, chi


def _unit(K: int, a: int, b: int) -> np.ndarray:
    op = np.zeros((K, K), dtype=complex)
    op[a, b] = 1.0
    return op


def sw_operators(
    s: SystemParams,
    K: int = 2,
    tol: Optional[Tolerances] = None,
    rabi_eig: Optional[EigenSystem] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(H0, V, S) on [levels(K), q1..qN].

    S = sum_n g_n sum_{a != b} chi_ab |a><b| [s+_n / (omega_qn + omega_ab) + s-_n / (omega_ab - omega_qn)]
    solves [S, H0] = -V for V = sum_n g_n sx_n (b + b^dag).
    """
    tol = tol or DEFAULT_TOLERANCES
    layout, energies, chi = _pieces(s, K, tol, rabi_eig)
    K = len(energies)
    h0 = embed(np.diag(energies).astype(complex), layout, LEVELS)
    v = np.zeros_like(h0)
    gen = np.zeros_like(h0)
    x_levels = embed(chi.astype(complex), layout, LEVELS)
    for n, q in enumerate(s.qubits, 1):
        label = qubit_label(n)
        h0 = h0 + 0.5 * q.omega_q * embed(pauli("z"), layout, label)
        if q.g == 0.0:
            continue
        v = v + q.g * x_levels @ embed(pauli("x"), layout, label)
        sp = embed(sigma_pm(+1), layout, label)
        sm = embed(sigma_pm(-1), layout, label)
        for a in range(K):
            for b in range(K):
                if a == b or abs(chi[a, b]) < CHI_FLOOR:
                    continue
                w_ab = energies[a] - energies[b]
                unit = embed(_unit(K, a, b), layout, LEVELS)
                up = 1.0 / _guard(q.omega_q + w_ab, f"delta^{n}_{a}{b}", tol)
                down = 1.0 / _guard(w_ab - q.omega_q, f"Delta^{n}_{a}{b}", tol)
                gen = gen + q.g * chi[a, b] * unit @ (up * sp + down * sm)
    return h0, v, gen


def sw_generator(
    s: SystemParams,
    K: int = 2,
    tol: Optional[Tolerances] = None,
    rabi_eig: Optional[EigenSystem] = None,
) -> np.ndarray:
    """Anti-Hermitian generator S of the transformation exp(S) H exp(-S)."""
    return sw_operators(s, K, tol, rabi_eig)[2]


def sw_hamiltonian(
    s: SystemParams,
    K: int = 2,
    tol: Optional[Tolerances] = None,
    rabi_eig: Optional[EigenSystem] = None,
) -> np.ndarray:
    """H + [S, H] + 1/2 [S, [S, H0]], i.e. everything up to second order in g_n."""
    h0, v, gen = sw_operators(s, K, tol, rabi_eig)
    h = h0 + v
    sh = gen @ h - h @ gen
    sh0 = gen @ h0 - h0 @ gen
    return h + sh + 0.5 * (gen @ sh0 - sh0 @ gen)


def sw_residual(
    s: SystemParams,
    K: int = 2,
    tol: Optional[Tolerances] = None,
) -> float:
    """max |[S, H0] + V|, zero when the generator removes the first-order coupling."""
    h0, v, gen = sw_operators(s, K, tol)
    return float(np.max(np.abs(gen @ h0 - h0 @ gen + v)))


def project_levels(h: np.ndarray, K: int, keep: Optional[int] = None) -> np.ndarray:
    """Drop level-off-diagonal blocks |k><k'| and restrict to the lowest `keep` levels."""
    keep = K if keep is None else keep
    d_q = h.shape[0] // K
    out = np.zeros((keep * d_q, keep * d_q), dtype=complex)
    for j in range(keep):
        sl = slice(j * d_q, (j + 1) * d_q)
        out[sl, sl] = h[sl, sl]
    return out
