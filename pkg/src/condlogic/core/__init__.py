"""Core modules for the conditional logic workbench."""

from .config import Config, config

__all__ = ["Config", "config"]
