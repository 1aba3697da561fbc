"""Catalog of the bundled experiment configurations.

Scans `configs/*.yaml` (plus an optional `configs/user/` directory) and
resolves a command-line argument either as a file path or as a config id.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional

from ..errors import ConfigError
from .base import ExperimentConfig

logger = logging.getLogger("rabibus")

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


class ExperimentCatalog:
    """Loads experiment files lazily and indexes them by id."""

    def __init__(self, config_dir: Optional[Path] = None):
        if config_dir is None:
            config_dir = CONFIG_DIR
        self.config_dir = Path(config_dir)
        self.user_dir = self.config_dir / "user"
        self._configs: Dict[str, ExperimentConfig] = {}
        self._loaded = False

    def load_all(self) -> None:
        """Parse every YAML file; unreadable files are logged and skipped."""
        self._configs = {}
        for directory in (self.config_dir, self.user_dir):
            if not directory.exists():
                continue
            for path in sorted(directory.glob("*.yaml")):
                try:
                    config = ExperimentConfig.load(path)
                except ConfigError as exc:
                    logger.warning("skipping %s: %s", path.name, exc)
                    continue
                if config.id in self._configs:
                    logger.warning("duplicate config id %r in %s", config.id, path.name)
                self._configs[config.id] = config
        self._loaded = True

    def _ensure_loaded(self) -> None:
        if not self._loaded:
            self.load_all()

    def get(self, config_id: str) -> Optional[ExperimentConfig]:
        self._ensure_loaded()
        return self._configs.get(config_id)

    def ids(self) -> List[str]:
        self._ensure_loaded()
        return list(self._configs)

    def entries(self) -> List[Dict[str, str]]:
        """id, kind, title and the reproduced result of every config, for listing."""
        self._ensure_loaded()
        return [
            {"id": c.id, "kind": c.kind, "title": c.title, "reproduces": c.reproduces}
            for c in self._configs.values()
        ]

    def resolve(self, name: str) -> ExperimentConfig:
        """A path to a YAML file, or the id of a bundled config."""
        path = Path(name)
        if path.suffix in (".yaml", ".yml") or path.exists():
            return ExperimentConfig.load(path)
        config = self.get(name)
        if config is None:
            raise ConfigError(f"no config file or id {name!r}; try `rabibus list`")
        return config
