"""Closed-system dynamics experiments: transfer, population inversion, transfer speed."""

import asyncio
from concurrent.futures import Executor
from dataclasses import asdict
from functools import partial
from typing import Any, Dict, List, Optional

import numpy as np

from ..dynamics import (
    UnitSystem,
    chi_scan,
    default_time_grid,
    entanglement_monitor,
    initial_state,
    population_inversion,
    projector,
    run_closed,
    transfer_observables,
    transfer_point,
)
from ..dynamics.closed import DEFAULT_PERIODS, DEFAULT_POINTS
from ..effective import j_eff
from ..errors import ConfigError
from ..model import SystemParams, TWO_QUBIT_STATES, build_total, named_state, rabi_eigensystem
from ..settings import Tolerances
from .base import (
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    grid_from_section,
    number_field,
    system_from_config,
    tolerances_from_config,
)
from .registry import ExperimentRegistry

TRANSFER = "transfer"
INVERSION = "inversion"
SPEED = "speed"
MODES = (TRANSFER, INVERSION, SPEED)


def time_grid(section: Dict[str, Any], s: SystemParams, tol: Tolerances) -> np.ndarray:
    """Explicit start/stop/points, or a number of exchange periods of the pair."""
    if "stop" in section or "values" in section:
        return grid_from_section(section, "time")
    periods = number_field(section, "periods", "time", DEFAULT_PERIODS)
    points = int(number_field(section, "points", "time", DEFAULT_POINTS))
    return default_time_grid(j_eff(s, tol=tol), periods, points)


def _transfer(s: SystemParams, times: np.ndarray, qubits: str, entropy: bool, tol: Tolerances):
    rabi_eig = rabi_eigensystem(s.rabi, tol)
    observables = transfer_observables(s)
    observables["p_0_eg"] = projector(named_state("eg", rabi_eig, 0))
    observables["p_0_ge"] = projector(named_state("ge", rabi_eig, 0))
    psi0 = initial_state(s, qubits, 0, tol)
    series = run_closed(build_total(s), psi0, times, observables, tol)
    if entropy:
        series.add("entropy", entanglement_monitor(s, psi0, times, tol)["entropy"])
    return series


class DynamicsExperiment(ExperimentKind):
    """Time evolution of the bus with two qubits under the full Hamiltonian."""

    required_sections = ("rabi", "qubits", "dynamics")

    @property
    def name(self) -> str:
        return "dynamics"

    @property
    def description(self) -> str:
        return "excitation transfer, population inversion and transfer speed"

    def validate(self, config: ExperimentConfig) -> List[str]:
        problems = []
        if len(config.sections.get("qubits") or []) != 2:
            problems.append("dynamics needs exactly two qubits")
        options = config.section("dynamics")
        mode = options.get("mode", TRANSFER)
        if mode not in MODES:
            problems.append(f"dynamics.mode must be one of {', '.join(MODES)}, got {mode!r}")
        initial = options.get("initial", "eg")
        if initial not in TWO_QUBIT_STATES:
            problems.append(f"dynamics.initial must be one of {', '.join(TWO_QUBIT_STATES)}, got {initial!r}")
        if mode == SPEED and not config.sections.get("sweep"):
            problems.append("speed mode needs a sweep section with g_p values")
        if mode == INVERSION and "stop" not in config.section("time"):
            problems.append("inversion mode needs time.start/stop/points")
        return problems

    async def run(self, config: ExperimentConfig, executor: Optional[Executor] = None) -> ExperimentResult:
        tol = tolerances_from_config(config)
        s = system_from_config(config)
        options = config.section("dynamics")
        mode = options.get("mode", TRANSFER)
        resolved = {**s.as_dict(), "mode": mode}
        loop = asyncio.get_running_loop()

        if mode == SPEED:
            return await self._speed(config, s, tol, executor, resolved)
        if mode not in (TRANSFER, INVERSION):
            raise ConfigError(f"unknown dynamics mode {mode!r}", field="dynamics.mode")

        times = time_grid(config.section("time"), s, tol)
        resolved["time"] = {"start": float(times[0]), "stop": float(times[-1]), "points": int(times.size)}
        if mode == INVERSION:
            series = await loop.run_in_executor(executor, partial(population_inversion, s, times, tol))
            summary = {"max_p_1_D20": float(np.max(series["p_1_D20"]))}
        else:
            qubits = options.get("initial", "eg")
            entropy = bool(options.get("entropy", False))
            resolved.update(initial=qubits, entropy=entropy)
            series = await loop.run_in_executor(executor, partial(_transfer, s, times, qubits, entropy, tol))
            summary = {"max_n2": float(np.max(series["n2"]))}

        return ExperimentResult(
            columns=["t"] + series.names,
            rows=np.column_stack([series.times] + [series[name] for name in series.names]),
            resolved=resolved,
            summary=summary,
        )

    async def _speed(self, config, s, tol, executor, resolved) -> ExperimentResult:
        grid = grid_from_section(config.section("sweep"), "sweep")
        units = UnitSystem(cavity_ghz=number_field(config.section("units"), "cavity_ghz", "units", UnitSystem.cavity_ghz))
        points_per_run = int(number_field(config.section("time"), "points", "time", DEFAULT_POINTS))

        params = [s.with_value("g_p", g) for g in grid]
        points = await self.map_points(partial(transfer_point, points=points_per_run, tol=tol), params, executor)
        loop = asyncio.get_running_loop()
        chi = await loop.run_in_executor(executor, partial(chi_scan, s.rabi, grid, tol))

        rows = [
            [p.g_p, p.two_j, c, p.first_max_time, p.first_max_value, p.entangling_time, units.nanoseconds(p.entangling_time)]
            for p, c in zip(points, chi)
        ]
        resolved.update(sweep={"variable": "g_p", "grid": grid.tolist()}, units=asdict(units))
        return ExperimentResult(
            columns=[
                "g_p",
                "two_j_eff",
                "chi01_sq",
                "first_max_time",
                "first_max_value",
                "entangling_time",
                "entangling_time_ns",
            ],
            rows=np.array(rows, dtype=float),
            resolved=resolved,
            summary={"fastest_entangling_time_ns": float(min(r[-1] for r in rows))},
        )


# Auto-register this kind
ExperimentRegistry.register(DynamicsExperiment)
