"""Test helpers: parameter factories and small builders."""

from pathlib import Path

import numpy as np

from rabibus.model import RabiParams, SystemParams


def make_rabi(g_p: float = 0.3, omega_p: float = 0.8, n_fock: int = 12) -> RabiParams:
    return RabiParams(omega_p=omega_p, g_p=g_p, n_fock=n_fock)


def make_pair(
    g_p: float = 0.3,
    omega_q1: float = 0.2,
    omega_q2: float = None,
    g: float = 0.02,
    omega_p: float = 0.8,
    n_fock: int = 12,
) -> SystemParams:
    """Two qubits on the bus; identical unless omega_q2 is given."""
    omega_q2 = omega_q1 if omega_q2 is None else omega_q2
    return SystemParams.two_qubit(omega_p, g_p, omega_q1, omega_q2, g, g, n_fock=n_fock)


def transfer_pair(g_p: float, n_fock: int = 20) -> SystemParams:
    """omega_p = 0.8, omega_q = 0.2, g = 0.02: the excitation-transfer parameter set."""
    return make_pair(g_p=g_p, n_fock=n_fock)


def random_density(d: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_hermitian(d: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (a + a.conj().T)


def write_config(directory: Path, name: str, text: str) -> Path:
    path = Path(directory) / name
    path.write_text(text)
    return path
