"""Command-line orchestration."""

from .config import ConfigError, ExperimentConfig
from .main import main
from .manifest import RunManifest

__all__ = ["ConfigError", "ExperimentConfig", "RunManifest", "main"]
