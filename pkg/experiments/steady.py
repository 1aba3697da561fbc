"""Steady-state excitation of the pumped open bus."""

from concurrent.futures import Executor
from functools import partial
from typing import List, Optional

import numpy as np

from ..lindblad import DIRECT, EIG, SteadyScan, effective_master, steady_point
from ..model import SWEEP_NAMES
from ..settings import DEFAULT_N_FOCK_LIOUVILLIAN
from .base import (
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    grid_from_section,
    rates_from_config,
    system_from_config,
    tolerances_from_config,
)
from .registry import ExperimentRegistry

METHODS = (DIRECT, EIG)


class SteadyExperiment(ExperimentKind):
    """Ab initio steady state along a sweep, optionally against the effective model.

    The dressed-basis Liouvillian grows as (4 * 2 * n_fock)^2, so the cavity
    truncation defaults to 8 here rather than to the closed-system value.
    """

    required_sections = ("rabi", "qubits", "rates", "sweep")

    @property
    def name(self) -> str:
        return "steady"

    @property
    def description(self) -> str:
        return "steady-state qubit excitations under pumping and loss"

    def validate(self, config: ExperimentConfig) -> List[str]:
        problems = []
        options = config.section("steady")
        method = options.get("method", DIRECT)
        if method not in METHODS:
            problems.append(f"steady.method must be one of {', '.join(METHODS)}, got {method!r}")
        variable = config.section("sweep").get("variable", "g_p")
        if variable not in SWEEP_NAMES:
            problems.append(f"sweep.variable must be one of {', '.join(SWEEP_NAMES)}, got {variable!r}")
        if options.get("effective") and len(config.sections.get("qubits") or []) != 2:
            problems.append("the effective comparison needs exactly two qubits")
        return problems

    async def run(self, config: ExperimentConfig, executor: Optional[Executor] = None) -> ExperimentResult:
        tol = tolerances_from_config(config)
        s = system_from_config(config, default_n_fock=DEFAULT_N_FOCK_LIOUVILLIAN)
        rates = rates_from_config(config)
        options = config.section("steady")
        method = options.get("method", DIRECT)
        effective = bool(options.get("effective", False))
        sweep = config.section("sweep")
        variable = sweep.get("variable", "g_p")
        grid = grid_from_section(sweep, "sweep")
        params = [s.with_value(variable, x) for x in grid]

        resolved = {
            **s.as_dict(),
            "rates": rates.__dict__.copy(),
            "method": method,
            "effective": effective,
            "sweep": {"variable": variable, "grid": grid.tolist()},
        }

        if effective:
            masters = await self.map_points(partial(effective_master, rates=rates, method=method, tol=tol), params, executor)
            delta = np.array([m.delta_r for m in masters])
            return ExperimentResult(
                columns=[variable, "n2_ab_initio", "n2_effective", "delta_r_percent"],
                rows=np.column_stack([
                    grid,
                    [m.n2_ab_initio for m in masters],
                    [m.n2_effective for m in masters],
                    100.0 * delta,
                ]),
                resolved=resolved,
                summary={"max_abs_delta_r_percent": float(np.max(np.abs(100.0 * delta)))},
            )

        points = await self.map_points(partial(steady_point, rates=rates, method=method, tol=tol), params, executor)
        scan = SteadyScan(grid, points)
        return ExperimentResult(
            columns=[variable, "n1_ss", "n2_ss"],
            rows=np.column_stack([grid, [p.n1 for p in points], scan.n2]),
            resolved=resolved,
            summary={
                "relative_variation": scan.relative_variation,
                "enhancement": scan.enhancement(),
            },
        )


# Auto-register this kind
ExperimentRegistry.register(SteadyExperiment)
