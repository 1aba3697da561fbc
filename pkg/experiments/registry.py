"""Lookup from a config's `kind` value to the ExperimentKind that runs it.

Kind modules register their class at import time. Registration builds the
single instance and rejects malformed kinds, so a bad kind fails on import
instead of on the first config that names it.
"""

import logging
import re
from difflib import get_close_matches
from typing import Dict, List, Optional, Type

from ..errors import ConfigError
from .base import SECTIONS, ExperimentKind

logger = logging.getLogger("rabibus")

_KIND_NAME = re.compile(r"^[a-z][a-z0-9-]*$")


class ExperimentRegistry:
    _kinds: Dict[str, ExperimentKind] = {}

    @classmethod
    def register(cls, kind_class: Type[ExperimentKind]) -> Type[ExperimentKind]:
        """Instantiate and store a kind; returns the class so it also works as a decorator."""
        kind = kind_class()
        name = kind.name
        if not isinstance(name, str) or not _KIND_NAME.match(name):
            raise ValueError(f"{kind_class.__name__}: kind name {name!r} must be lowercase letters, digits and '-'")
        current = cls._kinds.get(name)
        if current is not None and type(current) is not kind_class:
            raise ValueError(f"kind {name!r} is already registered by {type(current).__name__}")
        if not kind.description:
            raise ValueError(f"kind {name!r} has no description")
        unknown = sorted(set(kind.required_sections) - SECTIONS)
        if unknown:
            raise ValueError(f"kind {name!r} requires unknown section(s): {', '.join(unknown)}")
        cls._kinds[name] = kind
        logger.debug("registered experiment kind %s (%s)", name, kind_class.__name__)
        return kind_class

    @classmethod
    def get(cls, name: str) -> Optional[ExperimentKind]:
        return cls._kinds.get(name)

    @classmethod
    def suggest(cls, name: str) -> str:
        """'Did you mean ...?' for a near miss, empty otherwise."""
        similar = get_close_matches(name, cls.names(), n=1, cutoff=0.6)
        return f"Did you mean {similar[0]!r}?" if similar else ""

    @classmethod
    def require(cls, name: str) -> ExperimentKind:
        kind = cls._kinds.get(name)
        if kind is None:
            hint = cls.suggest(name)
            raise ConfigError(f"unknown experiment kind {name!r}" + (f"; {hint}" if hint else ""), field="kind")
        return kind

    @classmethod
    def names(cls) -> List[str]:
        return sorted(cls._kinds)
