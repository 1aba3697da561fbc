"""Main controller for rabibus.

Resolves experiment configs, validates them, runs the sweep points on a
thread pool and writes the CSV table plus a YAML run manifest.
"""

import asyncio
import csv
import logging
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml

from . import __version__
from .errors import ConfigError, RabiBusError
from .experiments import ExperimentCatalog, ExperimentConfig, ExperimentRegistry, ExperimentResult
from .experiments.base import tolerances_from_config
from .settings import thread_count
from .validation import ConfigValidator, ValidationResult

logger = logging.getLogger("rabibus")

NUMBER_FORMAT = ".12g"
MANIFEST_SUFFIX = ".manifest.yaml"


class WarningCollector(logging.Handler):
    """Keeps the text of every WARNING (and above) logged during a run."""

    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.messages: List[str] = []

    def emit(self, record: logging.LogRecord) -> None:
        self.messages.append(record.getMessage())


def to_builtin(value: Any) -> Any:
    """numpy scalars and arrays (also nested) to plain Python for YAML."""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


def _format(value: float) -> str:
    return format(float(value), NUMBER_FORMAT)


def _atomic_write(path: Path, write) -> None:
    """Write through a temporary file in the target directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            write(handle)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, result: ExperimentResult) -> None:
    """Header row, comma delimiter, 12 significant digits, LF line endings."""
    rows = np.atleast_2d(result.rows)

    def write(handle):
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(result.columns)
        for row in rows:
            writer.writerow([_format(v) for v in row])

    _atomic_write(path, write)


def write_manifest(path: Path, manifest: Dict[str, Any]) -> None:
    def write(handle):
        yaml.safe_dump(to_builtin(manifest), handle, sort_keys=False, default_flow_style=False)

    _atomic_write(path, write)


def manifest_path(csv_path: Path) -> Path:
    return csv_path.with_name(csv_path.stem + MANIFEST_SUFFIX)


def column_deltas(coarse: ExperimentResult, fine: ExperimentResult) -> Dict[str, float]:
    """Largest absolute difference per column between two runs of one config."""
    if coarse.columns != fine.columns or coarse.rows.shape != fine.rows.shape:
        raise ConfigError("the two truncations produced tables of different shape")
    deltas = np.max(np.abs(np.atleast_2d(fine.rows) - np.atleast_2d(coarse.rows)), axis=0)
    return {name: float(d) for name, d in zip(coarse.columns, deltas)}


class ExperimentController:
    """Runs experiment configs end to end."""

    def __init__(
        self,
        catalog: Optional[ExperimentCatalog] = None,
        out_dir: Optional[Path] = None,
        threads: Optional[int] = None,
    ):
        self.catalog = catalog or ExperimentCatalog()
        self.validator = ConfigValidator()
        self.out_dir = Path(out_dir) if out_dir is not None else Path.cwd()
        self.threads = threads or thread_count()

    def list_experiments(self) -> List[Dict[str, str]]:
        return self.catalog.entries()

    def prepare(self, name: str) -> Tuple[ExperimentConfig, ValidationResult]:
        """Resolve and validate; ConfigError on any blocking issue."""
        config = self.catalog.resolve(name)
        result = self.validator.validate(config)
        for issue in result.warnings:
            logger.warning("[rabibus] %s: %s", config.id, issue.message)
        result.raise_for_errors()
        return config, result

    async def execute(self, config: ExperimentConfig) -> Tuple[ExperimentResult, List[str]]:
        """Run one validated config, collecting the warnings it logs."""
        kind = ExperimentRegistry.require(config.kind)
        collector = WarningCollector()
        logger.addHandler(collector)
        try:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                logger.debug("[rabibus] running %s (%s) on %d threads", config.id, config.kind, self.threads)
                result = await kind.run(config, executor)
        finally:
            logger.removeHandler(collector)
        return result, collector.messages

    def output_path(self, config: ExperimentConfig) -> Path:
        return self.out_dir / (config.output or f"{config.id}.csv")

    def run(self, name: str) -> Path:
        """Validate, compute and write one config; returns the CSV path."""
        config, validation = self.prepare(name)
        result, warnings = asyncio.run(self.execute(config))

        path = self.output_path(config)
        manifest = {
            "id": config.id,
            "kind": config.kind,
            "title": config.title,
            "reproduces": config.reproduces,
            "version": __version__,
            "config": str(config.path) if config.path else None,
            "output": path.name,
            "columns": result.columns,
            "rows": int(np.atleast_2d(result.rows).shape[0]),
            "parameters": result.resolved,
            "tolerances": tolerances_from_config(config).as_dict(),
            "summary": result.summary,
            "warnings": [i.message for i in validation.warnings] + warnings,
        }
        write_csv(path, result)
        write_manifest(manifest_path(path), manifest)
        logger.info("[rabibus] %s: wrote %s (%d rows)", config.id, path, manifest["rows"])
        return path

    def check(self, name: str) -> Dict[str, Any]:
        """Run at the config's cavity truncation and at twice it."""
        config, _ = self.prepare(name)
        if not config.sections.get("rabi"):
            raise ConfigError(f"{config.kind} has no cavity truncation to check", field="rabi")
        coarse, _ = asyncio.run(self.execute(config))
        n_fock = int(coarse.resolved["rabi"]["n_fock"])
        fine, _ = asyncio.run(self.execute(config.with_n_fock(2 * n_fock)))
        return {"id": config.id, "n_fock": [n_fock, 2 * n_fock], "deltas": column_deltas(coarse, fine)}

    def run_many(self, names: Sequence[str]) -> int:
        """Run every config; the exit status is the worst one seen."""
        status = 0
        for name in names:
            try:
                self.run(name)
            except RabiBusError as exc:
                logger.error("[rabibus] %s: %s", name, exc)
                status = max(status, exc.exit_code)
        return status
