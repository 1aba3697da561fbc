"""Experiment kinds for rabibus."""

from .base import ExperimentConfig, ExperimentKind, ExperimentResult
from .catalog import ExperimentCatalog
from .registry import ExperimentRegistry

# Import kinds to trigger registration
from . import spectrum  # noqa: F401
from . import dynamics  # noqa: F401
from . import effective_compare  # noqa: F401
from . import steady  # noqa: F401
from . import transmon  # noqa: F401

__all__ = [
    "ExperimentConfig",
    "ExperimentKind",
    "ExperimentResult",
    "ExperimentCatalog",
    "ExperimentRegistry",
]
