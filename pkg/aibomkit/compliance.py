"""
Regulatory coverage reporting for AI BOM documents.

This module handles:
- Loading the bundled framework rulesets (EU AI Act, US FDA, EU MDR, IEEE P70xx)
- Assessing, per requirement, whether a document carries the mapped fields
- Rendering coverage reports as text, markdown or JSON

A requirement maps to selectors of three forms: a field name ("metric",
"createdBy", "externalIdentifier"), a relationship type
("relationship:trainedOn") or a package profile ("profile:dataset"). Field
selectors are matched by local name anywhere in the document, including
properties carried opaquely.
"""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .config import config
from .document import SpdxDocument
from .errors import UnknownFramework
from .model import (
    AIPackage,
    DatasetPackage,
    RelationshipType,
    is_empty,
    known_field_names,
    local_name,
)
from .serialization import creation_info_to_node, element_to_node, relationship_to_node, value_node_to_node

logger = logging.getLogger(__name__)

RELATIONSHIP_SELECTOR = "relationship:"
PROFILE_SELECTOR = "profile:"
PROFILE_CLASSES = {"ai": AIPackage, "dataset": DatasetPackage}


class CoverageStatus(str, Enum):
    SATISFIED = "satisfied"
    PARTIAL = "partial"
    MISSING = "missing"
    NOT_MAPPABLE = "notMappable"


class FailOn(str, Enum):
    NEVER = "never"
    MISSING = "missing"
    PARTIAL = "partial"


# =============================================================================
# Frameworks
# =============================================================================


class Requirement(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    id: str
    citation: str
    description: str
    mapped_paths: Tuple[str, ...] = Field(default=(), alias="mappedPaths")
    mappable: bool = True
    category: Optional[str] = None
    rationale: Optional[str] = None

    @model_validator(mode="after")
    def _unmappable_has_no_paths(self) -> "Requirement":
        if not self.mappable and self.mapped_paths:
            raise ValueError(f"Requirement {self.id} is not mappable but lists mapped paths")
        return self


class Framework(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    name: str
    requirements: Tuple[Requirement, ...]

    @model_validator(mode="after")
    def _unique_requirement_ids(self) -> "Framework":
        seen = set()
        for requirement in self.requirements:
            if requirement.id in seen:
                raise ValueError(f"Duplicate requirement id in {self.id}: {requirement.id}")
            seen.add(requirement.id)
        return self


def list_frameworks() -> List[str]:
    """Ids of the frameworks in the configured ruleset directory."""
    directory = config.framework_dir
    if not directory.is_dir():
        logger.warning(f"Framework directory not found: {directory}")
        return []
    return sorted(path.stem for path in directory.glob("*.json"))


def load_framework(framework_id: str) -> Framework:
    """
    Load a framework ruleset by id.

    Args:
        framework_id: e.g. "eu-ai-act"

    Returns:
        The parsed Framework

    Raises:
        UnknownFramework: If no ruleset file exists for the id
        ValueError: If the ruleset file is malformed
    """
    path = config.framework_dir / f"{framework_id}.json"
    if not path.is_file():
        raise UnknownFramework(framework_id)
    return parse_framework(path.read_text(encoding="utf-8"), source=path)


def parse_framework(text: str, source: Union[str, Path] = "<string>") -> Framework:
    try:
        framework = Framework.model_validate(json.loads(text))
    except (json.JSONDecodeError, ValidationError) as e:
        raise ValueError(f"Malformed framework ruleset {source}: {e}")

    unknown = [
        (requirement.id, selector)
        for requirement in framework.requirements
        for selector in requirement.mapped_paths
        if not is_known_selector(selector)
    ]
    if unknown:
        raise ValueError(f"Framework {framework.id} uses unknown selectors: {unknown}")

    logger.debug(f"Loaded framework {framework.id} with {len(framework.requirements)} requirements")
    return framework


def dump_framework(framework: Framework) -> str:
    """Serialize a framework in the ruleset file format."""
    data = framework.model_dump(by_alias=True, exclude_none=True, mode="json")
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def is_known_selector(selector: str) -> bool:
    """True when a selector names a field, relationship type or profile the model houses."""
    if selector.startswith(RELATIONSHIP_SELECTOR):
        token = selector[len(RELATIONSHIP_SELECTOR):]
        return token in {member.value for member in RelationshipType}
    if selector.startswith(PROFILE_SELECTOR):
        return selector[len(PROFILE_SELECTOR):] in PROFILE_CLASSES
    return selector in known_field_names()


# =============================================================================
# Assessment
# =============================================================================


class Evidence(BaseModel):
    model_config = ConfigDict(frozen=True)

    selector: str
    element_id: Optional[str] = None
    path: str = ""


class CoverageEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    requirement_id: str
    status: CoverageStatus
    citation: str = ""
    description: str = ""
    evidence: Tuple[Evidence, ...] = ()
    missing_paths: Tuple[str, ...] = ()
    rationale: Optional[str] = None


class CoverageReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    framework_id: str
    framework_name: str
    entries: Tuple[CoverageEntry, ...]

    def status_counts(self) -> Dict[str, int]:
        counts = pd.Series([entry.status.value for entry in self.entries], dtype="object").value_counts()
        return {status.value: int(counts.get(status.value, 0)) for status in CoverageStatus}

    def mappable_count(self) -> int:
        return sum(1 for entry in self.entries if entry.status != CoverageStatus.NOT_MAPPABLE)


def _searchable_nodes(document: SpdxDocument) -> Iterator[Tuple[Optional[str], Dict[str, Any]]]:
    """(element id, JSON object) pairs covering the whole document, rejected values removed."""
    top: Dict[str, Any] = dict(document.extras)
    if document.spdx_id is not None:
        top["spdxId"] = document.spdx_id
    if document.name is not None:
        top["name"] = document.name
    yield document.spdx_id, top

    if document.creation_info is not None:
        yield document.spdx_id, _without_rejected(creation_info_to_node(document.creation_info),
                                                  document.creation_info)
    for key, element in document.elements.items():
        yield element.element_id or key, _without_rejected(element_to_node(element), element)
    for node in document.value_nodes:
        yield None, _without_rejected(value_node_to_node(node), node)
    for relationship in document.relationships:
        yield (relationship.spdx_id or relationship.from_id,
               _without_rejected(relationship_to_node(relationship), relationship))


def _without_rejected(node: Dict[str, Any], source) -> Dict[str, Any]:
    rejected = {entry.property for entry in source.rejected}
    return {key: value for key, value in node.items() if key not in rejected}


def _find_field(value: Any, selector: str, path: str = "") -> Optional[str]:
    if isinstance(value, dict):
        for key, item in value.items():
            item_path = f"{path}.{key}" if path else key
            if (key == selector or local_name(key) == selector) and not _blank(item):
                return item_path
            found = _find_field(item, selector, item_path)
            if found is not None:
                return found
    elif isinstance(value, list):
        for index, item in enumerate(value):
            found = _find_field(item, selector, f"{path}[{index}]")
            if found is not None:
                return found
    return None


def _blank(value: Any) -> bool:
    if isinstance(value, list):
        return all(_blank(item) for item in value)
    return is_empty(value)


def find_evidence(document: SpdxDocument, selector: str) -> List[Evidence]:
    """
    Every place in the document that satisfies one selector.

    Args:
        document: Document to search
        selector: Field name, "relationship:<type>" or "profile:<ai|dataset>"

    Returns:
        Evidence items in document order; empty when the selector is unmet
    """
    if selector.startswith(RELATIONSHIP_SELECTOR):
        token = selector[len(RELATIONSHIP_SELECTOR):]
        return [
            Evidence(selector=selector, element_id=relationship.from_id, path="relationshipType")
            for relationship in document.relationships
            if relationship.relationship_type is not None and relationship.relationship_type.value == token
        ]

    if selector.startswith(PROFILE_SELECTOR):
        cls = PROFILE_CLASSES[selector[len(PROFILE_SELECTOR):]]
        return [
            Evidence(selector=selector, element_id=key, path="type")
            for key, element in document.elements.items()
            if isinstance(element, cls)
        ]

    evidence = []
    for element_id, node in _searchable_nodes(document):
        path = _find_field(node, selector)
        if path is not None:
            evidence.append(Evidence(selector=selector, element_id=element_id, path=path))
    return evidence


def assess_requirement(document: SpdxDocument, requirement: Requirement) -> CoverageEntry:
    fields = {
        "requirement_id": requirement.id,
        "citation": requirement.citation,
        "description": requirement.description,
        "rationale": requirement.rationale,
    }
    if not requirement.mappable:
        return CoverageEntry(status=CoverageStatus.NOT_MAPPABLE, **fields)

    evidence: List[Evidence] = []
    missing: List[str] = []
    for selector in requirement.mapped_paths:
        found = find_evidence(document, selector)
        if found:
            evidence.extend(found)
        else:
            missing.append(selector)

    if not missing:
        status = CoverageStatus.SATISFIED
    elif len(missing) < len(requirement.mapped_paths):
        status = CoverageStatus.PARTIAL
    else:
        status = CoverageStatus.MISSING
    return CoverageEntry(status=status, evidence=tuple(evidence), missing_paths=tuple(missing), **fields)


def assess(document: SpdxDocument, framework: Framework) -> CoverageReport:
    """
    Report, per framework requirement, whether the document carries its mapped fields.

    A requirement is satisfied when every selector is found somewhere in the
    document, partial when some are, missing when none are, and notMappable
    when the framework marks it so.

    Args:
        document: Document to assess
        framework: Loaded framework

    Returns:
        One CoverageEntry per requirement, in framework order
    """
    entries = tuple(assess_requirement(document, requirement) for requirement in framework.requirements)
    report = CoverageReport(framework_id=framework.id, framework_name=framework.name, entries=entries)
    logger.info(f"Assessed document against {framework.id}: {report.status_counts()}")
    return report


def breaches(report: CoverageReport, fail_on: Union[FailOn, str]) -> bool:
    """True when the report contains a status at or below the fail-on threshold."""
    fail_on = FailOn(fail_on)
    if fail_on == FailOn.NEVER:
        return False
    failing = {CoverageStatus.MISSING}
    if fail_on == FailOn.PARTIAL:
        failing.add(CoverageStatus.PARTIAL)
    return any(entry.status in failing for entry in report.entries)


# =============================================================================
# Rendering
# =============================================================================


def _evidence_text(entry: CoverageEntry) -> str:
    return ", ".join(f"{e.selector}@{e.element_id or '-'}" for e in entry.evidence)


def _summary_line(report: CoverageReport) -> str:
    counts = report.status_counts()
    return f"satisfied: {counts[CoverageStatus.SATISFIED.value]}/{report.mappable_count()} mappable"


def report_to_dict(report: CoverageReport) -> Dict[str, Any]:
    counts = report.status_counts()
    return {
        "frameworkId": report.framework_id,
        "frameworkName": report.framework_name,
        "summary": {"total": len(report.entries), **counts},
        "entries": [
            {
                "requirementId": entry.requirement_id,
                "status": entry.status.value,
                "citation": entry.citation,
                "description": entry.description,
                "evidence": [{"selector": e.selector, "elementId": e.element_id, "path": e.path}
                             for e in entry.evidence],
                "missingPaths": list(entry.missing_paths),
                "rationale": entry.rationale,
            }
            for entry in report.entries
        ],
    }


def _render_text(report: CoverageReport) -> str:
    title = f"{report.framework_name} ({report.framework_id})"
    counts = report.status_counts()
    lines = [
        title,
        "=" * len(title),
        _summary_line(report),
        "  ".join(f"{status}: {count}" for status, count in counts.items()),
        "",
    ]
    if report.entries:
        table = pd.DataFrame(
            [
                {
                    "requirement": entry.requirement_id,
                    "status": entry.status.value,
                    "citation": entry.citation,
                    "missing": ", ".join(entry.missing_paths),
                }
                for entry in report.entries
            ]
        )
        lines.append(table.to_string(index=False))
    return "\n".join(lines) + "\n"


def _cell(text: Optional[str]) -> str:
    return (text or "").replace("|", "\\|").replace("\n", " ")


def _render_markdown(report: CoverageReport) -> str:
    lines = [
        f"# {report.framework_name}",
        "",
        f"**{_summary_line(report)}**",
        "",
        "| Requirement | Citation | Status | Evidence / notes |",
        "|---|---|---|---|",
    ]
    for entry in report.entries:
        if entry.status == CoverageStatus.NOT_MAPPABLE:
            notes = entry.rationale
        elif entry.missing_paths:
            notes = "missing: " + ", ".join(entry.missing_paths)
        else:
            notes = _evidence_text(entry)
        lines.append(
            f"| {_cell(entry.requirement_id)} | {_cell(entry.citation)} "
            f"| {entry.status.value} | {_cell(notes)} |"
        )
    return "\n".join(lines) + "\n"


def render_report(report: CoverageReport, output_format: str = "text") -> str:
    """
    Render a coverage report.

    Args:
        report: Report from assess()
        output_format: "text", "markdown" or "json"

    Returns:
        Rendered report ending with a newline
    """
    if output_format == "json":
        return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"
    if output_format == "markdown":
        return _render_markdown(report)
    if output_format == "text":
        return _render_text(report)
    raise ValueError(f"Unknown report format: {output_format}")


def assess_all(document: SpdxDocument, framework_ids: Optional[Iterable[str]] = None) -> List[CoverageReport]:
    """Assess one document against several frameworks (all bundled ones by default)."""
    ids = list(framework_ids) if framework_ids is not None else list_frameworks()
    return [assess(document, load_framework(framework_id)) for framework_id in ids]
