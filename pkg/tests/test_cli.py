"""Exit-code and output contract of the aibomkit command."""

import json
import logging
import os
import random
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from aibomkit.cli import cli, scaffold_graph
from aibomkit.fixtures import fixture_bytes, fixture_path

ROOT = Path(__file__).resolve().parent.parent
MODEL_ID = "https://spdx.org/spdxdocs/SimpleHTR/AIPackage/word-model"
CO2_ID = "https://spdx.org/spdxdocs/co2-data/DatasetPackage/co2-data"


def run(*args):
    """Run the tool in a fresh interpreter, as a user would."""
    env = {**os.environ, "PYTHONPATH": str(ROOT)}
    env.pop("AIBOMKIT_LOG_LEVEL", None)
    return subprocess.run(
        [sys.executable, "-m", "aibomkit", *[str(arg) for arg in args]],
        capture_output=True, env=env, cwd=ROOT, timeout=60,
    )


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def runner():
    return CliRunner()


# =============================================================================
# validate
# =============================================================================


def test_validate_conformant_fixture():
    result = run("validate", fixture_path("simplehtr"))
    assert result.returncode == 0
    assert b"conformant (0 errors, 0 warnings)" in result.stdout


def test_validate_broken_fixture():
    result = run("validate", fixture_path("broken"))
    assert result.returncode == 1
    errors = [line for line in result.stdout.decode().splitlines() if line.startswith("ERROR")]
    assert len(errors) == 1
    assert "AI-M-06" in errors[0]


def test_validate_missing_file(tmp_path):
    result = run("validate", tmp_path / "nosuch.json")
    assert result.returncode == 2
    assert result.stdout == b""
    assert b"nosuch.json" in result.stderr


def test_validate_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"@graph": [', encoding="utf-8")
    assert run("validate", path).returncode == 2


def test_validate_deeply_nested_file(tmp_path):
    path = tmp_path / "deep.json"
    path.write_text("[" * 100000 + "]" * 100000, encoding="utf-8")
    result = run("validate", path)
    assert result.returncode == 2
    assert b"Traceback" not in result.stderr


def test_validate_json_output(runner):
    result = runner.invoke(cli, ["validate", str(fixture_path("bad-values")), "--output", "json"])
    assert result.exit_code == 1
    data = json.loads(result.stdout)
    assert data["status"] == "non-conformant"
    assert sorted(d["ruleId"] for d in data["diagnostics"]) == ["CORE-F-01", "DS-E-02", "DS-F-01"]
    assert set(data["diagnostics"][0]) == {"ruleId", "severity", "elementId", "path", "message", "paperCitation"}


def test_validate_profile_option(runner):
    result = runner.invoke(cli, ["validate", str(fixture_path("bad-values")), "--profile", "ai"])
    assert result.exit_code == 0
    assert "(profile not declared)" in result.stdout


def test_validate_rejects_unknown_profile(runner):
    result = runner.invoke(cli, ["validate", str(fixture_path("co2")), "--profile", "software"])
    assert result.exit_code == 2


# =============================================================================
# report
# =============================================================================


def test_report_with_fail_on_never():
    result = run("report", fixture_path("co2"), "--framework", "eu-ai-act", "--fail-on", "never")
    assert result.returncode == 0
    assert b"(eu-ai-act)" in result.stdout


def test_report_empty_document_fails_on_missing():
    result = run("report", fixture_path("empty"), "--framework", "us-fda", "--fail-on", "missing")
    assert result.returncode == 1


def test_report_unknown_framework():
    result = run("report", fixture_path("co2"), "--framework", "iso-9001")
    assert result.returncode == 2
    assert b"iso-9001" in result.stderr


def test_report_full_document_passes_default_threshold(runner):
    result = runner.invoke(cli, ["report", str(fixture_path("full")), "--framework", "eu-ai-act",
                                 "--output", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["summary"]["missing"] == 0
    assert data["summary"]["notMappable"] == 1


def test_report_markdown(runner):
    result = runner.invoke(cli, ["report", str(fixture_path("simplehtr")), "--framework", "eu-mdr",
                                 "--output", "markdown", "--fail-on", "never"])
    assert result.exit_code == 0
    assert result.stdout.startswith("# ")
    assert "| manufacturer-obligations |" in result.stdout


# =============================================================================
# inspect
# =============================================================================


def test_inspect_co2():
    result = run("inspect", fixture_path("co2"))
    assert result.returncode == 0
    text = result.stdout.decode()
    assert "DatasetPackage" in text
    assert text.count(" File ") == 2
    for relationship_type in ("contains", "describes", "hasDeclaredLicense"):
        assert relationship_type in text


def test_inspect_simplehtr_json(runner):
    result = runner.invoke(cli, ["inspect", str(fixture_path("simplehtr")), "--output", "json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert {"relationshipType": "trainedOn", "from": MODEL_ID,
            "to": "https://spdx.org/spdxdocs/SimpleHTR/DatasetPackage/IAMdataset"} in data["relationships"]
    assert {"id": MODEL_ID, "kind": "AIPackage", "name": "word-model"} in data["elements"]


def test_inspect_one_element(runner):
    result = runner.invoke(cli, ["inspect", str(fixture_path("co2")), CO2_ID, "--output", "json"])
    assert result.exit_code == 0
    node = json.loads(result.stdout)
    assert node["dataset_knownBias"] == "Data in some geographical areas are more complete than the others."

    result = runner.invoke(cli, ["inspect", str(fixture_path("co2")), CO2_ID])
    assert result.exit_code == 0
    assert "dataset_datasetType" in result.stdout


def test_inspect_unknown_element():
    assert run("inspect", fixture_path("co2"), "https://example.com/bogus").returncode == 1


def test_inspect_missing_file(tmp_path):
    assert run("inspect", tmp_path / "nosuch.json").returncode == 2


# =============================================================================
# scaffold
# =============================================================================


@pytest.mark.parametrize("kind", ["ai", "dataset"])
def test_scaffold_then_validate(kind, tmp_path):
    out = tmp_path / f"{kind}.spdx.json"
    assert run("scaffold", kind, out).returncode == 0

    result = run("validate", out)
    assert result.returncode == 0
    lines = result.stdout.decode().splitlines()
    assert not [line for line in lines if line.startswith("ERROR")]
    assert any("DOC-06" in line for line in lines)


def test_scaffold_dataset_contents(runner, tmp_path):
    out = tmp_path / "d.json"
    assert runner.invoke(cli, ["scaffold", "dataset", str(out)]).exit_code == 0
    graph = json.loads(out.read_text(encoding="utf-8"))["@graph"]
    (dataset,) = [node for node in graph if node["type"] == "dataset_DatasetPackage"]
    assert dataset["dataset_datasetType"] == ["noAssertion"]
    assert dataset["originatedBy"]
    assert dataset["spdxId"].startswith("https://example.invalid/")

    licenses = [node for node in graph if node["type"] == "Relationship"]
    assert sorted(node["relationshipType"] for node in licenses) == ["hasConcludedLicense", "hasDeclaredLicense"]
    assert all(node["to"] == ["NOASSERTION"] for node in licenses)


def test_scaffold_graph_uses_given_timestamp():
    graph = scaffold_graph("ai", created="2024-04-24T12:00:00Z")["@graph"]
    (package,) = [node for node in graph if node["type"] == "ai_AIPackage"]
    assert package["buildTime"] == package["releaseTime"] == "2024-04-24T12:00:00Z"


def test_scaffold_unwritable_target(tmp_path):
    assert run("scaffold", "ai", tmp_path / "no" / "such" / "dir" / "x.json").returncode == 2


# =============================================================================
# canonicalize
# =============================================================================


def _shuffled(value, rng):
    if isinstance(value, dict):
        keys = list(value)
        rng.shuffle(keys)
        return {key: _shuffled(value[key], rng) for key in keys}
    if isinstance(value, list):
        return [_shuffled(item, rng) for item in value]
    return value


def test_canonicalize_is_idempotent(tmp_path):
    first = run("canonicalize", fixture_path("simplehtr"))
    assert first.returncode == 0
    path = tmp_path / "once.json"
    path.write_bytes(first.stdout)
    second = run("canonicalize", path)
    assert second.returncode == 0
    assert second.stdout == first.stdout


def test_canonicalize_ignores_key_order(runner, tmp_path):
    original = json.loads(fixture_bytes("full"))
    shuffled = tmp_path / "shuffled.json"
    shuffled.write_text(json.dumps(_shuffled(original, random.Random(7))), encoding="utf-8")

    expected = runner.invoke(cli, ["canonicalize", str(fixture_path("full"))])
    result = runner.invoke(cli, ["canonicalize", str(shuffled)])
    assert result.exit_code == expected.exit_code == 0
    assert result.stdout_bytes == expected.stdout_bytes


def test_canonicalize_in_place(runner, tmp_path):
    path = tmp_path / "co2.json"
    path.write_text(json.dumps(json.loads(fixture_bytes("co2"))), encoding="utf-8")
    result = runner.invoke(cli, ["canonicalize", str(path), "--in-place"])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert path.read_bytes() == runner.invoke(cli, ["canonicalize", str(fixture_path("co2"))]).stdout_bytes


def test_canonicalize_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[{]", encoding="utf-8")
    assert run("canonicalize", path).returncode == 2


# =============================================================================
# rules / frameworks / group options
# =============================================================================


def test_rules_json(runner):
    result = runner.invoke(cli, ["rules", "--output", "json"])
    assert result.exit_code == 0
    rules = json.loads(result.stdout)
    ids = [rule["id"] for rule in rules]
    assert "AI-M-06" in ids and "DS-M-11" in ids
    assert all("paperCitation" in rule for rule in rules)


def test_frameworks_listing(runner):
    result = runner.invoke(cli, ["frameworks", "--output", "json"])
    assert result.exit_code == 0
    rows = json.loads(result.stdout)
    assert [row["id"] for row in rows] == ["eu-ai-act", "eu-mdr", "ieee-p70xx", "us-fda"]
    assert rows[0]["requirements"] == 14

    text = runner.invoke(cli, ["frameworks"]).stdout
    assert "eu-ai-act" in text


def test_bad_log_level():
    assert run("--log-level", "chatty", "rules").returncode == 2


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "aibomkit" in result.stdout
