"""Steady states and time integration of vectorized master equations."""

import logging
import time
import warnings
from typing import Dict, Optional, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg
from scipy.sparse.linalg import expm_multiply

from ..dynamics import TimeSeries
from ..errors import ConvergenceError, InvalidDimensionError, SteadyStateError
from ..linalg import trace_distance
from ..settings import DEFAULT_TOLERANCES, Tolerances
from .superoperator import EIGEN, Superoperator, unvec, vec

logger = logging.getLogger("rabibus")

EIG = "eig"
DIRECT = "direct"
# smallest eigenvalue of a physical steady state, after hermitization
PSD_FLOOR = -1e-9

__all__ = ["EIG", "DIRECT", "steady_state", "evolve_density", "integrate_master", "trace_distance"]


def _normalize(rho: np.ndarray) -> np.ndarray:
    trace = np.trace(rho)
    if not np.isfinite(trace) or abs(trace) == 0:
        raise SteadyStateError("steady-state candidate has zero or non-finite trace")
    rho = rho / trace
    return 0.5 * (rho + rho.conj().T)


def _steady_eig(sup: Superoperator, tol: Tolerances) -> np.ndarray:
    scale = max(1.0, sup.norm())
    values, vectors = scipy.linalg.eig(sup.dense())
    order = np.argsort(np.abs(values))
    lam = values[order[0]]
    logger.debug("Liouvillian spectrum: |lambda_min| = %.3e, next = %.3e", abs(lam), abs(values[order[1]]))
    if abs(lam) >= tol.steady_zero * scale:
        raise SteadyStateError(f"no zero eigenvalue: smallest |lambda| = {abs(lam):.3e}")
    zeros = int(np.sum(np.abs(values) < tol.steady_uniqueness * scale))
    if zeros > 1:
        raise SteadyStateError(f"steady state is not unique: {zeros} eigenvalues within tolerance of zero")
    unstable = np.max(values.real)
    if unstable > tol.steady_uniqueness * scale:
        raise SteadyStateError(f"Liouvillian has an eigenvalue with positive real part {unstable:.3e}")
    return unvec(vectors[:, order[0]], sup.dim)


def _stationary_modes(sup: Superoperator, tol: Tolerances) -> int:
    """Zero modes of an eigen-frame Liouvillian.

    Populations couple only among themselves and every coherence decays on
    its own diagonal entry, so the count splits into the rate block plus
    the coherence diagonal.
    """
    d = sup.dim
    populations = np.arange(d) * (d + 1)
    floor = tol.steady_uniqueness * max(1.0, sup.norm())
    matrix = scipy.sparse.csr_matrix(sup.matrix)
    rates = matrix[populations][:, populations].toarray()
    coherences = np.delete(matrix.diagonal(), populations)
    return int(np.sum(np.abs(scipy.linalg.eigvals(rates)) < floor) + np.sum(np.abs(coherences) < floor))


def _steady_direct(sup: Superoperator, tol: Tolerances) -> np.ndarray:
    """Solve L rho = 0 with the first row replaced by the trace condition."""
    d = sup.dim
    n = d * d
    if sup.frame == EIGEN:
        zeros = _stationary_modes(sup, tol)
        if zeros > 1:
            raise SteadyStateError(f"steady state is not unique: {zeros} stationary modes in the eigen frame")
    populations = np.arange(d) * (d + 1)
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = 1.0
    if sup.is_sparse:
        trace_row = scipy.sparse.csr_matrix(
            (np.ones(d, dtype=complex), (np.zeros(d, dtype=int), populations)), shape=(1, n)
        )
        a = scipy.sparse.vstack([trace_row, sup.matrix.tocsr()[1:]]).tocsc()
        solution = scipy.sparse.linalg.spsolve(a, rhs)
    else:
        a = np.array(sup.matrix, dtype=complex)
        a[0, :] = 0.0
        a[0, populations] = 1.0
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
                solution = scipy.linalg.solve(a, rhs)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning, ValueError) as exc:
            raise SteadyStateError(f"steady-state system is singular: {exc}") from exc
    if not np.all(np.isfinite(solution)):
        raise SteadyStateError("steady-state system is singular; the steady state may not be unique")
    return unvec(solution, d)


def steady_state(sup: Superoperator, method: str = EIG, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Lab-frame steady state: Hermitian, unit trace, PSD.

    `eig` takes the eigenvector of the minimum-modulus eigenvalue of the dense
    Liouvillian and checks uniqueness and stability; `direct` solves the
    trace-constrained linear system. In the eigen frame `direct` first counts
    the stationary modes of the rate block and the coherence diagonal; in the
    lab frame it relies on the singular-solve error and the residual check.
    """
    tol = tol or DEFAULT_TOLERANCES
    started = time.perf_counter()
    if method == EIG:
        rho = _steady_eig(sup, tol)
    elif method == DIRECT:
        rho = _steady_direct(sup, tol)
    else:
        raise ValueError(f"unknown steady-state method {method!r}; expected {EIG!r} or {DIRECT!r}")
    rho = _normalize(rho)

    residual = float(np.max(np.abs(sup.matrix @ vec(rho))))
    if residual > tol.steady_zero * max(1.0, sup.norm()):
        raise SteadyStateError(f"steady-state residual {residual:.3e} exceeds {tol.steady_zero:.1e}")
    lab = sup.to_lab(rho)
    lowest = float(scipy.linalg.eigvalsh(lab)[0])
    if lowest < PSD_FLOOR:
        raise SteadyStateError(f"steady state is not positive: smallest eigenvalue {lowest:.3e}")
    logger.debug(
        "steady state (%s, %s frame, d=%d): residual %.2e in %.2fs",
        method, sup.frame, sup.dim, residual, time.perf_counter() - started,
    )
    return lab


def _check_density(rho: np.ndarray, dim: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise InvalidDimensionError(f"density matrix has shape {rho.shape}, Liouvillian acts on {dim}x{dim}")
    return rho


def evolve_density(sup: Superoperator, rho0: np.ndarray, t: float) -> np.ndarray:
    """exp(L t) rho0 for one time, lab frame in and out."""
    rho0 = _check_density(rho0, sup.dim)
    v = expm_multiply(sup.matrix * float(t), vec(sup.from_lab(rho0)))
    return sup.to_lab(unvec(v, sup.dim))


def integrate_master(
    sup: Superoperator,
    rho0: np.ndarray,
    times: Sequence[float],
    observables: Optional[Dict[str, np.ndarray]] = None,
    tol: Optional[Tolerances] = None,
) -> TimeSeries:
    """Expectation values of lab-frame observables under d rho/dt = L rho.

    rho0 is the state at times[0]; each step applies exp(L dt) to the
    previous vector. A ConvergenceError is raised once the trace drifts.
    """
    tol = tol or DEFAULT_TOLERANCES
    series = TimeSeries(times)
    rho0 = _check_density(rho0, sup.dim)
    observables = observables or {}
    if sup.basis is None:
        framed = {name: np.asarray(op, dtype=complex) for name, op in observables.items()}
    else:
        v = sup.basis
        framed = {name: v.conj().T @ op @ v for name, op in observables.items()}

    values = {name: np.zeros(series.times.size) for name in framed}
    state = vec(sup.from_lab(rho0))
    previous = series.times[0] if series.times.size else 0.0
    for i, t in enumerate(series.times):
        if t > previous:
            state = expm_multiply(sup.matrix * (t - previous), state)
            previous = t
        rho = unvec(state, sup.dim)
        drift = abs(np.trace(rho) - 1.0)
        if drift > tol.trace_drift:
            raise ConvergenceError(f"trace drifted by {drift:.3e} at t={t:.6g}")
        for name, op in framed.items():
            # tr(O rho) = sum_ij O_ji rho_ij
            values[name][i] = float(np.real(np.sum(op.T * rho)))
    for name, data in values.items():
        series.add(name, data)
    return series
