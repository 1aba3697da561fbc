"""Full versus effective-Hamiltonian excitation transfer."""

import asyncio
from concurrent.futures import Executor
from dataclasses import asdict
from functools import partial
from typing import List, Optional

import numpy as np

from ..dynamics import UnitSystem, compare_full_effective, entangling_time
from ..dynamics.transfer import DEFAULT_EFFECTIVE_LEVELS
from ..effective import validity_ratio
from .base import (
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    number_field,
    system_from_config,
    tolerances_from_config,
)
from .dynamics import time_grid
from .registry import ExperimentRegistry


class EffectiveCompareExperiment(ExperimentKind):
    required_sections = ("rabi", "qubits")

    @property
    def name(self) -> str:
        return "effective-compare"

    @property
    def description(self) -> str:
        return "qubit-2 excitation under the full and the K-level effective Hamiltonian"

    def validate(self, config: ExperimentConfig) -> List[str]:
        levels = config.section("effective").get("levels", DEFAULT_EFFECTIVE_LEVELS)
        if isinstance(levels, bool) or not isinstance(levels, int) or levels < 2:
            return [f"effective.levels must be an integer >= 2, got {levels!r}"]
        if len(config.sections.get("qubits") or []) != 2:
            return ["effective-compare needs exactly two qubits"]
        return []

    async def run(self, config: ExperimentConfig, executor: Optional[Executor] = None) -> ExperimentResult:
        tol = tolerances_from_config(config)
        s = system_from_config(config)
        levels = int(config.section("effective").get("levels", DEFAULT_EFFECTIVE_LEVELS))
        units = UnitSystem(cavity_ghz=number_field(config.section("units"), "cavity_ghz", "units", UnitSystem.cavity_ghz))
        times = time_grid(config.section("time"), s, tol)

        loop = asyncio.get_running_loop()
        comparison = await loop.run_in_executor(
            executor, partial(compare_full_effective, s, times, levels, "eg", tol=tol)
        )
        ratio = await loop.run_in_executor(executor, partial(validity_ratio, s, tol))

        series = comparison.series
        t_ent = entangling_time(comparison.j_eff)
        return ExperimentResult(
            columns=["t", "n2_full", "n2_eff"],
            rows=np.column_stack([series.times, series["n2_full"], series["n2_eff"]]),
            resolved={
                **s.as_dict(),
                "levels": levels,
                "time": {"start": float(times[0]), "stop": float(times[-1]), "points": int(times.size)},
                "units": asdict(units),
            },
            summary={
                "j_eff": comparison.j_eff,
                "two_j_eff": 2.0 * comparison.j_eff,
                "max_deviation": comparison.max_deviation,
                "validity_ratio": ratio,
                "entangling_time": t_ent,
                "entangling_time_ns": units.nanoseconds(t_ent),
            },
        )


# Auto-register this kind
ExperimentRegistry.register(EffectiveCompareExperiment)
