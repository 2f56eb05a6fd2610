"""
Configuration management for the conditional logic workbench
"""

import os
from pathlib import Path
from typing import Any, Dict

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Hard cap on frame size for search and correspondence runs
WORLD_CAP = 5

DEFAULT_CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus" / "data"


class Config:
    """Configuration class for the conditional logic workbench"""

    def __init__(self):
        self._load_config()

    def _load_config(self):
        """Load configuration from environment variables"""
        # Proof kernel
        self.pc_atom_limit = self._get_env("PC_ATOM_LIMIT", 24, int)

        # Countermodel search
        self.search_budget = self._get_env("SEARCH_BUDGET", 5_000_000, int)
        self.max_worlds = self._get_env("MAX_WORLDS", WORLD_CAP, int)

        # Correspondence sampling
        self.correspondence_samples = self._get_env("CORRESPONDENCE_SAMPLES", 200, int)
        self.correspondence_seed = self._get_env("CORRESPONDENCE_SEED", 0, int)

        # Logging Configuration
        self.log_level = self._get_env("LOG_LEVEL", "INFO").upper()
        self.log_file = self._get_env("LOG_FILE", "condlogic.log")

        # Data Configuration
        self.corpus_dir = Path(self._get_env("CORPUS_DIR", "") or DEFAULT_CORPUS_DIR)

    def _get_env(self, key: str, default: Any = None, cast_type: type = str) -> Any:
        """Get environment variable with type casting"""
        value = os.getenv(key, default)
        if cast_type == str:
            return value
        elif cast_type == bool:
            return str(value).lower() == "true"
        elif cast_type == int:
            try:
                return int(value)
            except (ValueError, TypeError):
                return default
        else:
            return value

    def validate(self) -> Dict[str, bool]:
        """Validate configuration and return validation results"""
        validation = {}

        validation["pc_atom_limit"] = 1 <= self.pc_atom_limit <= 30
        validation["search_budget"] = self.search_budget > 0
        validation["max_worlds"] = 1 <= self.max_worlds <= WORLD_CAP
        validation["correspondence_samples"] = self.correspondence_samples > 0
        validation["log_level"] = self.log_level in ("DEBUG", "INFO", "WARNING", "ERROR")
        validation["corpus_dir"] = self.corpus_dir.is_dir()

        # Overall validation
        validation["valid"] = all(validation.values())

        return validation

    def get_summary(self) -> Dict[str, Any]:
        """Get configuration summary for logging"""
        return {
            "pc_atom_limit": self.pc_atom_limit,
            "search_budget": self.search_budget,
            "max_worlds": self.max_worlds,
            "correspondence_samples": self.correspondence_samples,
            "correspondence_seed": self.correspondence_seed,
            "log_level": self.log_level,
            "corpus_dir": str(self.corpus_dir),
            "validation": self.validate(),
        }

    def __repr__(self):
        return (f"Config(pc_atom_limit={self.pc_atom_limit}, "
                f"search_budget={self.search_budget}, max_worlds={self.max_worlds})")


# Global config instance
config = Config()
