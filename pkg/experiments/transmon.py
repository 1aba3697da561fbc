"""Transmon level fans and the transmon-QRS-transmon chain."""

import asyncio
from concurrent.futures import Executor
from dataclasses import asdict
from functools import partial
from typing import Any, Dict, List, Optional

import numpy as np

from ..model import check_rabi_gap
from ..settings import DEFAULT_N_MAX
from ..transmon import (
    DEFAULT_CHAIN_COUPLING,
    DEFAULT_CHAIN_LEVELS,
    DEFAULT_CHAIN_N_FOCK,
    SWEEP_VARIABLE,
    TransmonParams,
    anharmonicity,
    chain_scan,
    charging_energy_ratio,
    transmon_levels,
)
from ..transmon.charge_basis import DEFAULT_LEVELS
from .base import (
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    grid_from_section,
    number_field,
    rabi_from_config,
    tolerances_from_config,
)
from .registry import ExperimentRegistry

REFERENCE_RATIO = 49.0
# omega_10 quoted for the chain's QRS at omega_p = 1, g_p = 0.3
QUOTED_CHAIN_GAP = 1.4


def charging_energy(config: ExperimentConfig) -> float:
    """transmon.e_c directly, or units.e_c_ghz over units.cavity_ghz."""
    transmon = config.section("transmon")
    if "e_c" in transmon:
        return number_field(transmon, "e_c", "transmon")
    units = config.section("units")
    return charging_energy_ratio(
        number_field(units, "e_c_ghz", "units"),
        number_field(units, "cavity_ghz", "units"),
    )


def _transmon_options(config: ExperimentConfig) -> Dict[str, Any]:
    transmon = config.section("transmon")
    return {
        "n_g": number_field(transmon, "n_g", "transmon", 0.0),
        "n_max": int(number_field(transmon, "n_max", "transmon", DEFAULT_N_MAX)),
    }


def _levels_at(ratio: float, e_c: float, n_g: float, n_max: int, k: int, tol) -> np.ndarray:
    return transmon_levels(TransmonParams.from_ratio(e_c, ratio, n_g, n_max), k, tol).energies


def _charging_problems(config: ExperimentConfig) -> List[str]:
    if "e_c" in config.section("transmon"):
        return []
    units = config.section("units")
    if "e_c_ghz" in units and "cavity_ghz" in units:
        return []
    return ["transmon.e_c or units.e_c_ghz with units.cavity_ghz is required"]


class TransmonFanExperiment(ExperimentKind):
    required_sections = ("transmon", "sweep")

    @property
    def name(self) -> str:
        return "transmon"

    @property
    def description(self) -> str:
        return "lowest transmon levels against E_J/E_C"

    def validate(self, config: ExperimentConfig) -> List[str]:
        return _charging_problems(config)

    async def run(self, config: ExperimentConfig, executor: Optional[Executor] = None) -> ExperimentResult:
        tol = tolerances_from_config(config)
        e_c = charging_energy(config)
        options = _transmon_options(config)
        k = int(number_field(config.section("transmon"), "levels", "transmon", DEFAULT_LEVELS))
        reference = number_field(config.section("transmon"), "reference_ratio", "transmon", REFERENCE_RATIO)
        ratios = grid_from_section(config.section("sweep"), "sweep")

        energies = await self.map_points(
            partial(_levels_at, e_c=e_c, k=k, tol=tol, **options), list(ratios), executor
        )
        loop = asyncio.get_running_loop()
        alpha = await loop.run_in_executor(
            executor, anharmonicity, TransmonParams.from_ratio(e_c, reference, **options)
        )
        return ExperimentResult(
            columns=["ej_ec"] + [f"E{j}" for j in range(k)],
            rows=np.column_stack([ratios, np.array(energies).reshape(ratios.size, k)]),
            resolved={
                "transmon": {"e_c": e_c, "levels": k, **options},
                "sweep": {"variable": "ej_ec", "grid": ratios.tolist()},
            },
            summary={"reference_ratio": reference, "anharmonicity": alpha},
        )


class TransmonChainExperiment(ExperimentKind):
    """Spectrum of transmon 1 - QRS - transmon 2 while tuning transmon 2."""

    required_sections = ("rabi", "transmon", "sweep")

    @property
    def name(self) -> str:
        return "transmon-chain"

    @property
    def description(self) -> str:
        return "chain spectrum and avoided crossings against E_J/E_C of the second transmon"

    def validate(self, config: ExperimentConfig) -> List[str]:
        problems = _charging_problems(config)
        if "ratio" not in config.section("transmon"):
            problems.append("transmon.ratio (E_J/E_C of the fixed transmon) is required")
        return problems

    async def run(self, config: ExperimentConfig, executor: Optional[Executor] = None) -> ExperimentResult:
        tol = tolerances_from_config(config)
        rabi = rabi_from_config(config, default_n_fock=DEFAULT_CHAIN_N_FOCK)
        transmon = config.section("transmon")
        e_c = charging_energy(config)
        options = _transmon_options(config)
        t1 = TransmonParams.from_ratio(e_c, number_field(transmon, "ratio", "transmon"), **options)
        e_c2 = number_field(transmon, "e_c2", "transmon", e_c)
        coupling = config.section("coupling")
        g1 = number_field(coupling, "g1", "coupling", DEFAULT_CHAIN_COUPLING)
        g2 = number_field(coupling, "g2", "coupling", DEFAULT_CHAIN_COUPLING)
        spectrum = config.section("spectrum")
        m = int(number_field(spectrum, "levels", "spectrum", DEFAULT_CHAIN_LEVELS))
        detect = bool(spectrum.get("detect", True))
        quoted = number_field(config.section("rabi"), "quoted_gap", "rabi", QUOTED_CHAIN_GAP)
        ratios = grid_from_section(config.section("sweep"), "sweep")

        loop = asyncio.get_running_loop()
        scan = await loop.run_in_executor(
            executor, partial(chain_scan, t1, rabi, ratios, g1, g2, m, e_c2, tol, detect)
        )
        gap = await loop.run_in_executor(executor, check_rabi_gap, rabi, quoted)

        summary: Dict[str, Any] = {
            "crossings": [asdict(c) for c in scan.crossings],
            "rabi_gap": gap,
            "quoted_rabi_gap": quoted,
        }
        first = scan.first_crossing()
        if first is not None:
            summary["first_crossing"] = asdict(first)
        return ExperimentResult(
            columns=[SWEEP_VARIABLE] + [f"E{j}" for j in range(scan.energies.shape[1])],
            rows=np.column_stack([scan.grid, scan.energies]),
            resolved={
                "rabi": asdict(rabi),
                "transmon": {"e_c": e_c, "e_c2": e_c2, "ratio": t1.ratio, **options},
                "coupling": {"g1": g1, "g2": g2},
                "levels": m,
                "sweep": {"variable": SWEEP_VARIABLE, "grid": ratios.tolist()},
            },
            summary=summary,
        )


# Auto-register these kinds
ExperimentRegistry.register(TransmonFanExperiment)
ExperimentRegistry.register(TransmonChainExperiment)
