"""Base classes for experiment kinds."""

import asyncio
import copy
from abc import ABC, abstractmethod
from concurrent.futures import Executor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import yaml

from ..errors import ConfigError
from ..lindblad import DissipationRates
from ..model import QubitParams, RabiParams, SystemParams
from ..settings import DEFAULT_N_FOCK, DEFAULT_TOLERANCES, Tolerances

# Top-level keys that are not parameter sections
META_KEYS = ("id", "title", "description", "kind", "output", "reproduces")

# Parameter sections some parser reads
SECTIONS = frozenset({
    "rabi", "qubits", "sweep", "time", "rates", "tolerances", "units",
    "spectrum", "dynamics", "effective", "steady", "transmon", "coupling",
})


@dataclass
class ExperimentConfig:
    """A parsed experiment file: metadata plus free-form parameter sections."""
    id: str
    kind: str
    title: str = ""
    description: str = ""
    output: Optional[str] = None
    reproduces: str = ""
    sections: Dict[str, Any] = field(default_factory=dict)
    path: Optional[Path] = None

    @classmethod
    def from_mapping(cls, data: Any, path: Optional[Path] = None) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("experiment file must contain a mapping at the top level")
        kind = data.get("kind")
        if not isinstance(kind, str) or not kind:
            raise ConfigError("missing experiment kind", field="kind")
        default_id = path.stem if path is not None else kind
        return cls(
            id=str(data.get("id", default_id)),
            kind=kind,
            title=str(data.get("title", "")),
            description=str(data.get("description", "")),
            output=data.get("output"),
            reproduces=str(data.get("reproduces", "")),
            sections={k: v for k, v in data.items() if k not in META_KEYS},
            path=path,
        )

    @classmethod
    def load(cls, path: Path) -> "ExperimentConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path.name}: invalid YAML: {exc}") from exc
        return cls.from_mapping(data, path)

    def section(self, name: str) -> Dict[str, Any]:
        value = self.sections.get(name) or {}
        if not isinstance(value, dict):
            raise ConfigError(f"section {name!r} must be a mapping", field=name)
        return value

    def with_n_fock(self, n_fock: int) -> "ExperimentConfig":
        """Copy with the cavity truncation replaced."""
        clone = copy.deepcopy(self)
        rabi = dict(clone.section("rabi"))
        rabi["n_fock"] = int(n_fock)
        clone.sections["rabi"] = rabi
        return clone


@dataclass
class ExperimentResult:
    """Tabular output of one run plus what goes into the manifest."""
    columns: List[str]
    rows: np.ndarray
    resolved: Dict[str, Any] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


def number_field(section: Dict[str, Any], key: str, where: str, default: Any = None) -> float:
    value = section.get(key, default)
    if value is None:
        raise ConfigError(f"missing {where}.{key}", field=f"{where}.{key}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}", field=f"{where}.{key}")
    return float(value)


def rabi_from_config(config: ExperimentConfig, default_n_fock: int = DEFAULT_N_FOCK) -> RabiParams:
    rabi = config.section("rabi")
    return RabiParams(
        omega_p=number_field(rabi, "omega_p", "rabi"),
        g_p=number_field(rabi, "g_p", "rabi", 0.0),
        n_fock=int(number_field(rabi, "n_fock", "rabi", default_n_fock)),
        omega_cav=number_field(rabi, "omega_cav", "rabi", 1.0),
    )


def system_from_config(config: ExperimentConfig, default_n_fock: int = DEFAULT_N_FOCK) -> SystemParams:
    qubits = config.sections.get("qubits") or []
    if not isinstance(qubits, list) or not qubits:
        raise ConfigError("qubits must be a non-empty list", field="qubits")
    parsed = []
    for n, entry in enumerate(qubits, 1):
        if not isinstance(entry, dict):
            raise ConfigError(f"qubit {n} must be a mapping", field=f"qubits[{n}]")
        parsed.append(QubitParams(
            omega_q=number_field(entry, "omega_q", f"qubits[{n}]"),
            g=number_field(entry, "g", f"qubits[{n}]", 0.0),
        ))
    return SystemParams(rabi_from_config(config, default_n_fock), tuple(parsed))


def rates_from_config(config: ExperimentConfig) -> DissipationRates:
    rates = config.section("rates")
    try:
        return DissipationRates.from_dict(rates)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"rates: {exc}", field="rates") from exc


def tolerances_from_config(config: ExperimentConfig) -> Tolerances:
    try:
        return DEFAULT_TOLERANCES.with_overrides(config.section("tolerances"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"tolerances: {exc}", field="tolerances") from exc


def grid_from_section(section: Dict[str, Any], where: str) -> np.ndarray:
    """Either an explicit `values` list or `start`/`stop`/`points` for a linspace."""
    if "values" in section:
        values = section["values"]
        if not isinstance(values, list) or not values:
            raise ConfigError(f"{where}.values must be a non-empty list", field=f"{where}.values")
        return np.array([number_field({"v": v}, "v", f"{where}.values") for v in values])
    start = number_field(section, "start", where)
    stop = number_field(section, "stop", where)
    points = int(number_field(section, "points", where))
    if points < 1:
        raise ConfigError(f"{where}.points must be >= 1", field=f"{where}.points")
    return np.linspace(start, stop, points)


class ExperimentKind(ABC):
    """Abstract base class for experiment kinds.

    Each kind (spectrum, dynamics, steady, ...) turns a config into a table.
    Sweep points are independent; `map_points` runs them on the executor and
    returns the results in input order.
    """

    #: sections a config of this kind must carry
    required_sections: Sequence[str] = ()

    @property
    @abstractmethod
    def name(self) -> str:
        """Value of the `kind` key handled by this class."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    def validate(self, config: ExperimentConfig) -> List[str]:
        """Kind-specific problems (messages); the generic checks live in the validator."""
        return []

    @abstractmethod
    async def run(self, config: ExperimentConfig, executor: Optional[Executor] = None) -> ExperimentResult:
        pass

    @staticmethod
    async def map_points(fn: Callable[[Any], Any], items: Sequence[Any], executor: Optional[Executor] = None) -> List[Any]:
        loop = asyncio.get_running_loop()
        futures = [loop.run_in_executor(executor, partial(fn, item)) for item in items]
        return list(await asyncio.gather(*futures))
