"""
Fixture corpus module.

This module handles:
- Listing the bundled example documents and their expected validation outcome
- Loading a fixture by name as raw bytes or as a parsed document
- Loading the per-field snippet corpus

The corpus lives in the directory named by ``config.fixture_dir``; the
``expectations.json`` manifest in the same directory lists every fixture.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .config import config
from .document import SpdxDocument
from .errors import UnknownFixture
from .serialization import read_document

logger = logging.getLogger(__name__)

EXPECTATIONS_FILE = "expectations.json"
SNIPPETS_FILE = "snippets.json"
CONFORMANT = "conformant"


class FixtureEntry(BaseModel):
    """One document of the corpus and the outcome the validator must produce."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    name: str
    file: str
    description: str = ""
    expect: Union[str, Tuple[str, ...]] = CONFORMANT
    placeholder_fields: Tuple[str, ...] = Field(default=(), alias="placeholderFields")

    @property
    def is_conformant(self) -> bool:
        return self.expect == CONFORMANT

    @property
    def expected_rules(self) -> List[str]:
        """Sorted rule ids of every expected diagnostic; empty when conformant."""
        if self.is_conformant:
            return []
        return sorted(self.expect)


class Snippet(BaseModel):
    """A single-field example node."""

    model_config = ConfigDict(frozen=True)

    name: str
    node: Dict[str, Any]


def _fixture_dir() -> Path:
    return config.fixture_dir


@lru_cache(maxsize=4)
def _load_manifest(directory: Path) -> Tuple[FixtureEntry, ...]:
    path = directory / EXPECTATIONS_FILE
    logger.debug(f"Loading fixture manifest {path}")
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return tuple(FixtureEntry.model_validate(entry) for entry in data["fixtures"])


def list_fixtures() -> List[FixtureEntry]:
    """Every fixture of the corpus, in manifest order."""
    return list(_load_manifest(_fixture_dir()))


def get_fixture(name: str) -> FixtureEntry:
    """
    Look up a fixture entry by name.

    Raises:
        UnknownFixture: If the manifest has no such entry
    """
    for entry in list_fixtures():
        if entry.name == name:
            return entry
    raise UnknownFixture(name)


def fixture_path(name: str) -> Path:
    return _fixture_dir() / get_fixture(name).file


def fixture_bytes(name: str) -> bytes:
    return fixture_path(name).read_bytes()


def load_fixture(name: str) -> SpdxDocument:
    """
    Parse a fixture into a document.

    Args:
        name: Fixture name from the manifest (e.g. "simplehtr", "co2")

    Returns:
        The parsed document

    Raises:
        UnknownFixture: If the manifest has no such entry
    """
    document, notes = read_document(fixture_bytes(name))
    if notes:
        logger.info(f"Fixture {name} parsed with {len(notes)} notes")
    return document


def load_snippets() -> List[Snippet]:
    """The per-field snippet corpus."""
    path = _fixture_dir() / SNIPPETS_FILE
    with open(path, "r", encoding="utf-8") as f:
        return [Snippet.model_validate(item) for item in json.load(f)]
