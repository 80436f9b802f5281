"""Shared pytest fixtures for the bundled BOM corpus."""

import json
import random

import pytest

from aibomkit.fixtures import fixture_bytes, load_fixture
from aibomkit.serialization import read_document


@pytest.fixture
def rng():
    """Seeded generator so property tests are repeatable."""
    return random.Random(20240620)


@pytest.fixture
def simplehtr():
    return load_fixture("simplehtr")


@pytest.fixture
def co2():
    return load_fixture("co2")


@pytest.fixture
def full_bom():
    return load_fixture("full")


@pytest.fixture
def empty_bom():
    return load_fixture("empty")


@pytest.fixture
def fixture_graph():
    """Decoded JSON of a fixture, for tests that edit documents before parsing."""
    def load(name):
        return json.loads(fixture_bytes(name))
    return load


@pytest.fixture
def parse():
    """Parse a JSON-compatible value into a document, dropping read notes."""
    def parse_value(value):
        document, _ = read_document(json.dumps(value))
        return document
    return parse_value
