"""
Configuration module for aibomkit.

This module loads the environment variables that tune the library and the
command-line tool. All variables are optional.

Recognised environment variables (a .env file in the working directory is
also read; variables already set in the environment win):
- AIBOMKIT_FRAMEWORK_DIR=/path/to/rulesets
- AIBOMKIT_FIXTURE_DIR=/path/to/fixtures
- AIBOMKIT_CONTEXT_IRI=https://spdx.org/rdf/3.0.1/spdx-context.jsonld
- AIBOMKIT_LOG_LEVEL=WARNING
- AIBOMKIT_MAX_FILE_SIZE_MB=50
- AIBOMKIT_ALLOWED_EXTENSIONS=json,jsonld
"""

import logging
import os
from pathlib import Path
from typing import List, Optional

DEFAULT_CONTEXT_IRI = "https://spdx.org/rdf/3.0.1/spdx-context.jsonld"
PACKAGE_DIR = Path(__file__).resolve().parent

logger = logging.getLogger(__name__)


class Config:
    """Configuration class that loads environment variables."""

    def __init__(self, env_file: str = ".env"):
        """
        Initialize configuration with environment variables.

        Args:
            env_file: Optional dotenv-style file to merge into the environment
        """
        self._load_env_file(env_file)

    def _load_env_file(self, env_file: str):
        """Load AIBOMKIT_* variables from a .env file if it exists."""
        try:
            with open(env_file, "r", encoding="utf-8") as f:
                for line in f:
                    line = line.strip()
                    if line and not line.startswith("#") and "=" in line:
                        key, value = line.split("=", 1)
                        key = key.strip()
                        if key.startswith("AIBOMKIT_"):
                            os.environ.setdefault(key, value.strip())
        except FileNotFoundError:
            logger.debug(f"{env_file} not found, using process environment only")

    def validate(self):
        """
        Check that every configured value is usable.

        Raises:
            ValueError: If a variable holds a malformed value
        """
        if logging.getLevelName(self.log_level) == f"Level {self.log_level}":
            raise ValueError(f"AIBOMKIT_LOG_LEVEL is not a logging level: {self.log_level}")

        try:
            self.max_file_size_mb
        except ValueError:
            raise ValueError(
                f"AIBOMKIT_MAX_FILE_SIZE_MB must be an integer: {os.getenv('AIBOMKIT_MAX_FILE_SIZE_MB')}"
            )

        override = os.getenv("AIBOMKIT_FRAMEWORK_DIR")
        if override and not Path(override).is_dir():
            raise ValueError(f"AIBOMKIT_FRAMEWORK_DIR is not a directory: {override}")

    # Bundled data locations
    @property
    def framework_dir(self) -> Path:
        override = os.getenv("AIBOMKIT_FRAMEWORK_DIR")
        return Path(override) if override else PACKAGE_DIR / "frameworks"

    @property
    def fixture_dir(self) -> Path:
        override = os.getenv("AIBOMKIT_FIXTURE_DIR")
        return Path(override) if override else PACKAGE_DIR / "fixtures"

    # Serialization
    @property
    def context_iri(self) -> str:
        return os.getenv("AIBOMKIT_CONTEXT_IRI", DEFAULT_CONTEXT_IRI)

    # Logging
    @property
    def log_level(self) -> str:
        return os.getenv("AIBOMKIT_LOG_LEVEL", "WARNING").strip().upper()

    # Input files
    @property
    def max_file_size_mb(self) -> int:
        return int(os.getenv("AIBOMKIT_MAX_FILE_SIZE_MB", "50"))

    @property
    def allowed_extensions(self) -> List[str]:
        extensions = os.getenv("AIBOMKIT_ALLOWED_EXTENSIONS", "json,jsonld")
        return [ext.strip().lower().lstrip(".") for ext in extensions.split(",") if ext.strip()]

    def max_file_size_bytes(self) -> Optional[int]:
        """Size limit in bytes, or None when the limit is disabled (0 or less)."""
        limit = self.max_file_size_mb
        return limit * 1024 * 1024 if limit > 0 else None


# Global configuration instance
config = Config()
