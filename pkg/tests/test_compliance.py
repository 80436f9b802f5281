"""Tests for framework loading, coverage assessment and report rendering."""

import json

import pytest

from aibomkit.compliance import (
    CoverageStatus,
    FailOn,
    Framework,
    Requirement,
    assess,
    assess_all,
    breaches,
    dump_framework,
    find_evidence,
    is_known_selector,
    list_frameworks,
    load_framework,
    parse_framework,
    render_report,
    report_to_dict,
)
from aibomkit.errors import UnknownFramework
from aibomkit.fixtures import load_snippets

BUNDLED = ["eu-ai-act", "eu-mdr", "ieee-p70xx", "us-fda"]


# =============================================================================
# Frameworks
# =============================================================================


def test_bundled_frameworks():
    assert list_frameworks() == BUNDLED
    for framework_id in BUNDLED:
        framework = load_framework(framework_id)
        assert framework.id == framework_id
        assert framework.requirements


def test_eu_ai_act_rows():
    framework = load_framework("eu-ai-act")
    assert len(framework.requirements) == 14
    unmappable = [r for r in framework.requirements if not r.mappable]
    assert [r.id for r in unmappable] == ["users-in-testing"]
    assert unmappable[0].mapped_paths == ()
    assert unmappable[0].rationale


def test_framework_sizes():
    assert len(load_framework("us-fda").requirements) == 9
    assert len(load_framework("eu-mdr").requirements) == 1
    ieee = load_framework("ieee-p70xx")
    assert len(ieee.requirements) == 35
    assert not next(r for r in ieee.requirements if r.id == "impactStatement").mappable


def test_unknown_framework():
    with pytest.raises(UnknownFramework) as excinfo:
        load_framework("iso-9001")
    assert excinfo.value.framework_id == "iso-9001"


def test_framework_dir_override(tmp_path, monkeypatch):
    (tmp_path / "tiny.json").write_text(json.dumps({
        "id": "tiny",
        "name": "Tiny",
        "requirements": [{"id": "r1", "citation": "c", "description": "d", "mappedPaths": ["knownBias"]}],
    }), encoding="utf-8")
    monkeypatch.setenv("AIBOMKIT_FRAMEWORK_DIR", str(tmp_path))
    assert list_frameworks() == ["tiny"]
    assert load_framework("tiny").requirements[0].mapped_paths == ("knownBias",)


@pytest.mark.parametrize("text", [
    "not json",
    json.dumps({"id": "x", "name": "X"}),
    json.dumps({"id": "x", "name": "X", "requirements": [
        {"id": "r", "citation": "c", "description": "d", "mappedPaths": ["name"], "mappable": False}]}),
    json.dumps({"id": "x", "name": "X", "requirements": [
        {"id": "r", "citation": "c", "description": "d", "mappedPaths": ["name"]},
        {"id": "r", "citation": "c", "description": "d", "mappedPaths": ["name"]}]}),
    json.dumps({"id": "x", "name": "X", "requirements": [
        {"id": "r", "citation": "c", "description": "d", "mappedPaths": ["favouriteColour"]}]}),
])
def test_parse_framework_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_framework(text)


def test_dump_framework_round_trips():
    framework = load_framework("eu-ai-act")
    assert parse_framework(dump_framework(framework)) == framework


@pytest.mark.parametrize("selector, known", [
    ("metric", True),
    ("externalIdentifier", True),
    ("relationship:trainedOn", True),
    ("relationship:dependsOn", False),
    ("profile:dataset", True),
    ("profile:software", False),
    ("favouriteColour", False),
])
def test_is_known_selector(selector, known):
    assert is_known_selector(selector) is known


# =============================================================================
# Assessment
# =============================================================================


def test_full_bom_satisfies_every_mappable_requirement(full_bom):
    for framework_id in BUNDLED:
        framework = load_framework(framework_id)
        report = assess(full_bom, framework)
        for requirement, entry in zip(framework.requirements, report.entries):
            expected = CoverageStatus.SATISFIED if requirement.mappable else CoverageStatus.NOT_MAPPABLE
            assert entry.status == expected, (framework_id, entry.requirement_id, entry.missing_paths)
        assert not breaches(report, FailOn.PARTIAL)


def test_empty_bom_misses_everything(empty_bom):
    for framework_id in BUNDLED:
        framework = load_framework(framework_id)
        report = assess(empty_bom, framework)
        for requirement, entry in zip(framework.requirements, report.entries):
            expected = CoverageStatus.MISSING if requirement.mappable else CoverageStatus.NOT_MAPPABLE
            assert entry.status == expected
        assert breaches(report, FailOn.MISSING)


def test_partial_coverage(co2):
    report = assess(co2, load_framework("eu-ai-act"))
    entries = {entry.requirement_id: entry for entry in report.entries}

    assert entries["system-name"].status == CoverageStatus.SATISFIED
    information = entries["information-used"]
    assert information.status == CoverageStatus.PARTIAL
    assert "profile:dataset" not in information.missing_paths
    assert "relationship:trainedOn" in information.missing_paths
    assert entries["users-in-testing"].status == CoverageStatus.NOT_MAPPABLE


def test_find_evidence(simplehtr):
    trained = find_evidence(simplehtr, "relationship:trainedOn")
    assert [e.element_id for e in trained] == ["https://spdx.org/spdxdocs/SimpleHTR/AIPackage/word-model"]

    hyperparameters = find_evidence(simplehtr, "hyperparameter")
    assert hyperparameters[0].path == "ai_hyperparameter"

    datasets = find_evidence(simplehtr, "profile:dataset")
    assert [e.element_id for e in datasets] == ["https://spdx.org/spdxdocs/SimpleHTR/DatasetPackage/IAMdataset"]

    created_by = find_evidence(simplehtr, "createdBy")
    assert created_by and created_by[0].path == "createdBy"

    assert find_evidence(simplehtr, "knownBias") == []


def test_rejected_values_are_not_evidence(fixture_graph, parse):
    graph = fixture_graph("co2")
    dataset = next(n for n in graph["@graph"] if n["type"] == "dataset_DatasetPackage")
    dataset["dataset_confidentialityLevel"] = "Amber"
    assert find_evidence(parse(graph), "confidentialityLevel") == []
    dataset["dataset_confidentialityLevel"] = "amber"
    assert find_evidence(parse(graph), "confidentialityLevel")


def test_requirement_statuses_from_selectors(co2):
    def status(paths):
        requirement = Requirement(id="r", citation="c", description="d", mapped_paths=paths)
        framework = Framework(id="f", name="F", requirements=(requirement,))
        return assess(co2, framework).entries[0].status

    assert status(("knownBias", "intendedUse")) == CoverageStatus.SATISFIED
    assert status(("knownBias", "limitation")) == CoverageStatus.PARTIAL
    assert status(("limitation", "relationship:trainedOn")) == CoverageStatus.MISSING


@pytest.mark.parametrize("fail_on, expected", [
    (FailOn.NEVER, False),
    (FailOn.MISSING, False),
    ("partial", True),
])
def test_breaches(co2, fail_on, expected):
    requirement = Requirement(id="r", citation="c", description="d", mapped_paths=("knownBias", "limitation"))
    report = assess(co2, Framework(id="f", name="F", requirements=(requirement,)))
    assert breaches(report, fail_on) is expected


STATUS_RANK = {CoverageStatus.MISSING: 0, CoverageStatus.PARTIAL: 1, CoverageStatus.SATISFIED: 2}
PACKAGE_FIXTURES = {
    "ai_AIPackage": [("simplehtr", "https://spdx.org/spdxdocs/SimpleHTR/AIPackage/word-model")],
    "dataset_DatasetPackage": [("co2", "https://spdx.org/spdxdocs/co2-data/DatasetPackage/co2-data")],
}
ADDED_FIELDS = [
    (fixture, element_id, key, value)
    for snippet in load_snippets()
    for fixture, element_id in PACKAGE_FIXTURES.get(snippet.node["type"], [])
    for key, value in snippet.node.items() if key != "type"
]


@pytest.mark.parametrize("fixture, element_id, key, value", ADDED_FIELDS,
                         ids=[f"{a[0]}-{a[2]}" for a in ADDED_FIELDS])
def test_adding_a_field_never_lowers_coverage(fixture, element_id, key, value, fixture_graph, parse):
    graph = fixture_graph(fixture)
    package = next(node for node in graph["@graph"] if node.get("spdxId") == element_id)
    if key in package:
        return
    before = assess_all(parse(graph))
    package[key] = value
    after = assess_all(parse(graph))

    for old_report, new_report in zip(before, after):
        for old, new in zip(old_report.entries, new_report.entries):
            if old.status == CoverageStatus.NOT_MAPPABLE:
                assert new.status == old.status
                continue
            assert STATUS_RANK[new.status] >= STATUS_RANK[old.status], (new_report.framework_id, new.requirement_id)
            assert set(new.missing_paths) <= set(old.missing_paths)


# =============================================================================
# Rendering
# =============================================================================


def test_status_counts(empty_bom):
    report = assess(empty_bom, load_framework("eu-ai-act"))
    assert report.status_counts() == {"satisfied": 0, "partial": 0, "missing": 13, "notMappable": 1}
    assert report.mappable_count() == 13


def test_render_json(simplehtr):
    report = assess(simplehtr, load_framework("us-fda"))
    data = json.loads(render_report(report, "json"))
    assert data == report_to_dict(report)
    assert data["frameworkId"] == "us-fda"
    assert data["summary"]["total"] == 9
    assert set(data["entries"][0]) == {
        "requirementId", "status", "citation", "description", "evidence", "missingPaths", "rationale",
    }


def test_render_text(co2):
    report = assess(co2, load_framework("eu-ai-act"))
    lines = render_report(report, "text").splitlines()
    assert lines[0] == f"{report.framework_name} (eu-ai-act)"
    assert set(lines[1]) == {"="}
    assert lines[2].startswith("satisfied: ")
    assert lines[2].endswith("/13 mappable")
    assert any("information-used" in line and "partial" in line for line in lines)


def test_render_markdown(co2):
    text = render_report(assess(co2, load_framework("eu-ai-act")), "markdown")
    assert text.startswith("# EU Artificial Intelligence Act")
    assert "| Requirement | Citation | Status | Evidence / notes |" in text
    users = next(line for line in text.splitlines() if line.startswith("| users-in-testing "))
    assert "| notMappable |" in users
    assert "externalIdentifier" in users


def test_render_unknown_format(co2):
    with pytest.raises(ValueError):
        render_report(assess(co2, load_framework("eu-mdr")), "html")


def test_assess_all(simplehtr):
    reports = assess_all(simplehtr)
    assert [report.framework_id for report in reports] == BUNDLED
    assert [r.framework_id for r in assess_all(simplehtr, ["us-fda"])] == ["us-fda"]
