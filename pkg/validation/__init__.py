"""Experiment config validation for rabibus.

Checks configs against the registered experiment kinds before any
computation runs or any output file is written.
"""

from .validator import ConfigValidator, ValidationIssue, ValidationResult

__all__ = ["ConfigValidator", "ValidationIssue", "ValidationResult"]
