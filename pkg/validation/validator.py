"""Experiment config validator.

Runs before anything is computed or written:
1. unknown_kind - `kind` names a registered experiment kind
2. missing_section - the kind's required sections are present
3. invalid_rabi / invalid_qubits - parameters parse and are in range
4. invalid_rates - dissipation rates are known and non-negative
5. invalid_grid - sweep and time grids parse; sweeps strictly increase
6. invalid_tolerances - only known tolerance names
7. invalid_output - output is a CSV file name
8. kind_options - checks specific to the kind
Warnings flag sections no kind reads, couplings that are not small against
g_p, large open-system dimensions and a missing qubit-2 decay.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..errors import ConfigError, InvalidParameterError
from ..experiments.base import (
    SECTIONS,
    ExperimentConfig,
    grid_from_section,
    rabi_from_config,
    rates_from_config,
    system_from_config,
    tolerances_from_config,
)
from ..experiments.registry import ExperimentRegistry

# Hilbert dimension above which the dressed Liouvillian gets slow
LARGE_OPEN_DIM = 64


@dataclass
class ValidationIssue:
    """A single validation error or warning."""
    check: str       # e.g. "unknown_kind", "missing_section"
    field: str
    message: str
    severity: str = "error"  # "error" or "warning"
    suggestion: str = ""


@dataclass
class ValidationResult:
    valid: bool = True
    issues: List[ValidationIssue] = field(default_factory=list)
    config_id: str = ""

    @property
    def errors(self) -> List[ValidationIssue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> List[ValidationIssue]:
        return [i for i in self.issues if i.severity == "warning"]

    def format_report(self) -> str:
        """Human-readable summary for the command line."""
        if not self.issues:
            return f"{self.config_id}: valid"

        lines = []
        errors = self.errors
        if errors:
            lines.append(f"{self.config_id}: {len(errors)} error{'s' if len(errors) != 1 else ''}")
            for i, err in enumerate(errors, 1):
                line = f"{i}. [{err.check}] {err.message}"
                if err.suggestion:
                    line += f" - {err.suggestion}"
                lines.append(line)
        warnings = self.warnings
        if warnings:
            lines.append(f"{self.config_id}: {len(warnings)} warning{'s' if len(warnings) != 1 else ''}")
            for w in warnings:
                lines.append(f"  - [{w.check}] {w.message}")
        return "\n".join(lines)

    def raise_for_errors(self) -> None:
        errors = self.errors
        if errors:
            first = errors[0]
            raise ConfigError(self.format_report(), field=first.field)


class ConfigValidator:
    """Checks an ExperimentConfig against the registered experiment kinds."""

    def validate(self, config: ExperimentConfig) -> ValidationResult:
        result = ValidationResult(config_id=config.id)

        kind = ExperimentRegistry.get(config.kind)
        if kind is None:
            result.issues.append(ValidationIssue(
                check="unknown_kind",
                field="kind",
                message=f"unknown experiment kind {config.kind!r}",
                suggestion=ExperimentRegistry.suggest(config.kind),
            ))
            result.valid = False
            return result

        for name in kind.required_sections:
            if not config.sections.get(name):
                result.issues.append(ValidationIssue(
                    check="missing_section",
                    field=name,
                    message=f"{config.kind} needs a {name!r} section",
                ))

        self._check_sections(config, result)
        self._check_parameters(config, result)
        self._check_grids(config, result)
        self._check_tolerances(config, result)
        self._check_output(config, result)

        # Kind checks assume the generic structure is sound
        if not result.errors:
            try:
                problems = kind.validate(config)
            except (ConfigError, InvalidParameterError) as exc:
                problems = [str(exc)]
            for message in problems:
                result.issues.append(ValidationIssue(check="kind_options", field=config.kind, message=message))

        result.valid = len(result.errors) == 0
        return result

    def _add_error(self, result: ValidationResult, check: str, exc: Exception) -> None:
        result.issues.append(ValidationIssue(check=check, field=getattr(exc, "field", ""), message=str(exc)))

    def _check_parameters(self, config: ExperimentConfig, result: ValidationResult) -> None:
        if config.sections.get("rabi"):
            try:
                rabi_from_config(config)
            except (ConfigError, InvalidParameterError) as exc:
                self._add_error(result, "invalid_rabi", exc)
                return

        if config.sections.get("qubits"):
            try:
                s = system_from_config(config)
            except (ConfigError, InvalidParameterError) as exc:
                self._add_error(result, "invalid_qubits", exc)
            else:
                for message in s.coupling_warnings():
                    result.issues.append(ValidationIssue(
                        check="coupling_not_small", field="qubits", message=message, severity="warning",
                    ))
                if config.sections.get("rates") and s.layout.total_dim > LARGE_OPEN_DIM:
                    result.issues.append(ValidationIssue(
                        check="large_liouvillian",
                        field="rabi.n_fock",
                        message=f"Hilbert dimension {s.layout.total_dim} gives a {s.layout.total_dim ** 2}-dimensional Liouvillian",
                        severity="warning",
                        suggestion="lower rabi.n_fock",
                    ))

        if config.sections.get("rates"):
            try:
                rates = rates_from_config(config)
            except (ConfigError, InvalidParameterError) as exc:
                self._add_error(result, "invalid_rates", exc)
            else:
                if rates.gamma_out == 0.0:
                    result.issues.append(ValidationIssue(
                        check="no_outflow",
                        field="rates.gamma_out",
                        message="gamma_out = 0 leaves qubit 2 without decay; the steady state may not be unique",
                        severity="warning",
                        suggestion="set rates.gamma_out > 0",
                    ))

    def _check_grids(self, config: ExperimentConfig, result: ValidationResult) -> None:
        for name in ("sweep", "time"):
            section = config.sections.get(name)
            if not section:
                continue
            if not isinstance(section, dict):
                result.issues.append(ValidationIssue(
                    check="invalid_grid", field=name, message=f"section {name!r} must be a mapping",
                ))
                continue
            # time may be given in exchange periods instead of an explicit grid
            if name == "time" and "stop" not in section and "values" not in section:
                continue
            try:
                grid = grid_from_section(section, name)
            except ConfigError as exc:
                self._add_error(result, "invalid_grid", exc)
                continue
            if grid.size > 1 and np.any(np.diff(grid) <= 0):
                result.issues.append(ValidationIssue(
                    check="invalid_grid", field=name, message=f"{name} grid must be strictly increasing",
                ))

    def _check_tolerances(self, config: ExperimentConfig, result: ValidationResult) -> None:
        try:
            tolerances_from_config(config)
        except ConfigError as exc:
            self._add_error(result, "invalid_tolerances", exc)

    def _check_sections(self, config: ExperimentConfig, result: ValidationResult) -> None:
        for name in sorted(set(config.sections) - SECTIONS):
            result.issues.append(ValidationIssue(
                check="unknown_section",
                field=name,
                message=f"section {name!r} is not read by any experiment kind",
                severity="warning",
            ))

    def _check_output(self, config: ExperimentConfig, result: ValidationResult) -> None:
        output = config.output
        if output is None:
            return
        if not isinstance(output, str) or not output.endswith(".csv"):
            result.issues.append(ValidationIssue(
                check="invalid_output",
                field="output",
                message=f"output must be a .csv file name, got {output!r}",
            ))
