"""Spectrum sweeps with parity labels and avoided-crossing detection."""

import asyncio
from concurrent.futures import Executor
from dataclasses import asdict, replace
from functools import partial
from typing import List, Optional

import numpy as np

from ..effective import j_eff
from ..errors import NearResonanceError
from ..model import (
    SWEEP_NAMES,
    assemble_scan,
    rabi_spectrum_point,
    spectrum_point,
)
from ..model.spectrum import DEFAULT_LEVELS
from .base import (
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    grid_from_section,
    rabi_from_config,
    system_from_config,
    tolerances_from_config,
)
from .registry import ExperimentRegistry

RABI_SWEEPS = ("omega_p", "g_p")


def _exchange_flag(value, params) -> bool:
    if value in (None, "auto"):
        return all(p.exchange_symmetric for p in params)
    return bool(value)


class SpectrumExperiment(ExperimentKind):
    """Lowest levels over a parameter grid; QRS only when no qubits are given."""

    required_sections = ("rabi", "sweep")

    @property
    def name(self) -> str:
        return "spectrum"

    @property
    def description(self) -> str:
        return "energy levels with parity labels and avoided crossings along a sweep"

    def validate(self, config: ExperimentConfig) -> List[str]:
        variable = config.section("sweep").get("variable")
        allowed = SWEEP_NAMES if config.sections.get("qubits") else RABI_SWEEPS
        if variable not in allowed:
            return [f"sweep.variable must be one of {', '.join(allowed)}, got {variable!r}"]
        return []

    async def run(self, config: ExperimentConfig, executor: Optional[Executor] = None) -> ExperimentResult:
        tol = tolerances_from_config(config)
        sweep = config.section("sweep")
        variable = sweep["variable"]
        grid = grid_from_section(sweep, "sweep")
        options = config.section("spectrum")
        m = int(options.get("levels", DEFAULT_LEVELS))
        detect = bool(options.get("detect", True))

        if not config.sections.get("qubits"):
            rabi = rabi_from_config(config)
            params = [replace(rabi, **{variable: float(x)}) for x in grid]
            points = await self.map_points(partial(rabi_spectrum_point, m=m, tol=tol), params, executor)
            energies = np.array([p.energies for p in points])
            parities = np.array([p.parities for p in points])
            columns = [variable] + [f"E{k}" for k in range(m)] + [f"P{k}" for k in range(m)]
            return ExperimentResult(
                columns=columns,
                rows=np.column_stack([grid, energies, parities]),
                resolved={"rabi": asdict(rabi), "sweep": {"variable": variable, "grid": grid.tolist()}, "levels": m},
            )

        s = system_from_config(config)
        params = [s.with_value(variable, x) for x in grid]
        exchange = _exchange_flag(options.get("exchange"), params)
        points = await self.map_points(partial(spectrum_point, m=m, exchange=exchange, tol=tol), params, executor)
        loop = asyncio.get_running_loop()
        scan = await loop.run_in_executor(
            executor, partial(assemble_scan, s, variable, grid, points, exchange, tol, detect)
        )

        blocks = [grid[:, np.newaxis], scan.energies, scan.parities]
        columns = [variable] + [f"E{k}" for k in range(scan.energies.shape[1])]
        columns += [f"P{k}" for k in range(scan.energies.shape[1])]
        if exchange:
            blocks.append(scan.exchange)
            columns += [f"X{k}" for k in range(scan.energies.shape[1])]

        summary = {"crossings": [asdict(c) for c in scan.crossings]}
        first = scan.first_crossing()
        if first is not None:
            summary["first_crossing"] = asdict(first)
            if not exchange:
                try:
                    summary["two_j_eff_at_crossing"] = 2.0 * j_eff(s.with_value(variable, first.location), tol=tol)
                except NearResonanceError:
                    pass
        return ExperimentResult(
            columns=columns,
            rows=np.column_stack(blocks),
            resolved={
                **s.as_dict(),
                "sweep": {"variable": variable, "grid": grid.tolist()},
                "levels": m,
                "exchange": exchange,
                "detect": detect,
            },
            summary=summary,
        )


# Auto-register this kind
ExperimentRegistry.register(SpectrumExperiment)
