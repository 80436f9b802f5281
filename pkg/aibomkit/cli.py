"""
Command-line front end for aibomkit.

This module handles:
- Validating AI and dataset BOMs against the AI and Dataset profiles
- Rendering regulatory coverage reports
- Inspecting, scaffolding and canonicalizing BOM documents
- Mapping library exceptions to exit codes

Exit codes: 0 success, 1 findings (non-conformant document, breached
coverage threshold, unknown element), 2 usage, IO or parse error.

Usage::

    aibomkit validate simplehtr.spdx.json
    aibomkit validate co2.spdx.json --profile dataset --output json
    aibomkit report co2.spdx.json --framework eu-ai-act --fail-on never
    aibomkit inspect simplehtr.spdx.json
    aibomkit scaffold ai new.spdx.json
    aibomkit canonicalize bom.json --in-place
    aibomkit rules
    aibomkit frameworks
"""

import json
import logging
import sys
from datetime import datetime
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import pandas as pd
from dateutil import tz

from . import __version__
from .compliance import (
    FailOn,
    assess,
    breaches,
    list_frameworks,
    load_framework,
    render_report,
)
from .config import config
from .document import SpdxDocument
from .errors import AibomError, UnknownFramework
from .log_sanitizer import setup_sanitized_logging
from .model import element_kind, element_name
from .serialization import canonicalize, element_to_node, read_document, read_document_file, write_document
from .validator import (
    Severity,
    conformance_summary,
    format_diagnostic,
    has_errors,
    rule_catalog,
    rules_to_json,
    validate_document,
)

logger = logging.getLogger(__name__)

SCAFFOLD_NAMESPACE = "https://example.invalid/spdxdocs/PLACEHOLDER"
SCAFFOLD_CREATION_INFO = "_:creationinfo"


class ExitStatus(IntEnum):
    OK = 0
    FINDINGS = 1
    ERROR = 2


def _exit(status: ExitStatus):
    sys.exit(int(status))


def _load(path: Path) -> SpdxDocument:
    """Read a document or leave with exit status 2."""
    try:
        document, _ = read_document_file(path)
    except (OSError, AibomError) as e:
        logger.error(f"Cannot read {path}: {e}")
        _exit(ExitStatus.ERROR)
    return document


def _table(rows: List[Dict[str, Any]], columns: List[str]) -> str:
    if not rows:
        return "(none)"
    return pd.DataFrame(rows, columns=columns).to_string(index=False)


# =============================================================================
# validate
# =============================================================================


@click.command("validate")
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--profile", type=click.Choice(["ai", "dataset", "auto"]), default="auto", show_default=True,
              help="Profile to check packages against; auto uses the document's profileConformance.")
@click.option("--output", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True)
def validate_command(file: Path, profile: str, output_format: str):
    """Check a BOM against the AI and Dataset profile rules."""
    document = _load(file)
    profiles = None if profile == "auto" else (profile,)
    diagnostics = validate_document(document, profiles)
    status = conformance_summary(diagnostics)

    if output_format == "json":
        click.echo(json.dumps({
            "file": str(file),
            "status": status.value,
            "diagnostics": [d.to_dict() for d in diagnostics],
        }, indent=2, ensure_ascii=False))
    else:
        for diagnostic in diagnostics:
            click.echo(format_diagnostic(diagnostic))
        errors = sum(1 for d in diagnostics if d.severity == Severity.ERROR)
        warnings = sum(1 for d in diagnostics if d.severity == Severity.WARNING)
        click.echo(f"{file.name}: {status.value} ({errors} errors, {warnings} warnings)")

    logger.info(f"Validated {file}: {status.value}")
    _exit(ExitStatus.FINDINGS if has_errors(diagnostics) else ExitStatus.OK)


# =============================================================================
# report
# =============================================================================


@click.command("report")
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--framework", "framework_id", required=True,
              help="Framework ruleset id, e.g. eu-ai-act (see 'aibomkit frameworks').")
@click.option("--output", "output_format", type=click.Choice(["text", "json", "markdown"]), default="text",
              show_default=True)
@click.option("--fail-on", type=click.Choice([member.value for member in FailOn]), default=FailOn.MISSING.value,
              show_default=True, help="Lowest coverage status that makes the command exit 1.")
def report_command(file: Path, framework_id: str, output_format: str, fail_on: str):
    """Report how well a BOM covers a regulatory framework."""
    try:
        framework = load_framework(framework_id)
    except UnknownFramework as e:
        logger.error(f"{e}; available: {', '.join(list_frameworks())}")
        _exit(ExitStatus.ERROR)
    except ValueError as e:
        logger.error(f"Cannot load framework {framework_id}: {e}")
        _exit(ExitStatus.ERROR)

    document = _load(file)
    report = assess(document, framework)
    click.echo(render_report(report, output_format).rstrip("\n"))

    _exit(ExitStatus.FINDINGS if breaches(report, fail_on) else ExitStatus.OK)


# =============================================================================
# inspect
# =============================================================================


def _element_rows(document: SpdxDocument) -> List[Dict[str, Any]]:
    return [
        {"id": key, "kind": element_kind(element), "name": element_name(element) or ""}
        for key, element in document.elements.items()
    ]


def _relationship_rows(document: SpdxDocument) -> List[Dict[str, Any]]:
    return [
        {
            "relationshipType": r.relationship_type.value if r.relationship_type else "",
            "from": r.from_id or "",
            "to": ", ".join(r.to),
        }
        for r in document.relationships
    ]


@click.command("inspect")
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("element_id", required=False)
@click.option("--output", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True)
def inspect_command(file: Path, element_id: Optional[str], output_format: str):
    """List the elements and relationships of a BOM, or show one element."""
    document = _load(file)

    if element_id is None:
        elements = _element_rows(document)
        relationships = _relationship_rows(document)
        if output_format == "json":
            click.echo(json.dumps({"elements": elements, "relationships": relationships},
                                  indent=2, ensure_ascii=False))
        else:
            click.echo(f"Elements ({len(elements)}):")
            click.echo(_table(elements, ["id", "kind", "name"]))
            click.echo("")
            click.echo(f"Relationships ({len(relationships)}):")
            click.echo(_table(relationships, ["relationshipType", "from", "to"]))
        _exit(ExitStatus.OK)

    element = document.get(element_id)
    if element is None:
        logger.error(f"No element {element_id} in {file}")
        _exit(ExitStatus.FINDINGS)

    node = canonicalize(element_to_node(element))
    if output_format == "json":
        click.echo(json.dumps(node, indent=2, ensure_ascii=False))
    else:
        rows = [
            {"field": key, "value": value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)}
            for key, value in node.items()
        ]
        click.echo(_table(rows, ["field", "value"]))
    _exit(ExitStatus.OK)


# =============================================================================
# scaffold
# =============================================================================


def _now() -> str:
    return datetime.now(tz.UTC).strftime("%Y-%m-%dT%H:%M:%SZ")


def scaffold_graph(kind: str, created: Optional[str] = None) -> Dict[str, Any]:
    """
    Template document carrying every mandatory field of one package kind.

    Args:
        kind: "ai" or "dataset"
        created: Timestamp for created/buildTime/releaseTime; defaults to now

    Returns:
        JSON-LD envelope with placeholder values under the example.invalid namespace
    """
    created = created or _now()
    supplier = f"{SCAFFOLD_NAMESPACE}/Organization/supplier"

    if kind == "ai":
        package_id = f"{SCAFFOLD_NAMESPACE}/AIPackage/model"
        package: Dict[str, Any] = {
            "type": "ai_AIPackage",
            "name": "PLACEHOLDER model name",
            "primaryPurpose": "model",
        }
    else:
        package_id = f"{SCAFFOLD_NAMESPACE}/DatasetPackage/dataset"
        package = {
            "type": "dataset_DatasetPackage",
            "name": "PLACEHOLDER dataset name",
            "primaryPurpose": "data",
            "dataset_datasetType": ["noAssertion"],
            "originatedBy": [supplier],
        }
    package.update({
        "spdxId": package_id,
        "creationInfo": SCAFFOLD_CREATION_INFO,
        "packageVersion": "PLACEHOLDER",
        "buildTime": created,
        "releaseTime": created,
        "downloadLocation": [f"{SCAFFOLD_NAMESPACE}/download"],
        "suppliedBy": [supplier],
    })

    def license_relationship(relationship_type: str) -> Dict[str, Any]:
        return {
            "type": "Relationship",
            "spdxId": f"{SCAFFOLD_NAMESPACE}/Relationship/{relationship_type}",
            "creationInfo": SCAFFOLD_CREATION_INFO,
            "from": package_id,
            "relationshipType": relationship_type,
            "to": ["NOASSERTION"],
        }

    return {
        "@context": config.context_iri,
        "@graph": [
            {
                "type": "CreationInfo",
                "@id": SCAFFOLD_CREATION_INFO,
                "created": created,
                "createdBy": [supplier],
                "specVersion": "3.0.1",
            },
            {
                "type": "SpdxDocument",
                "spdxId": f"{SCAFFOLD_NAMESPACE}/document",
                "creationInfo": SCAFFOLD_CREATION_INFO,
                "profileConformance": ["core", "software", kind],
                "rootElement": [package_id],
            },
            {
                "type": "Organization",
                "spdxId": supplier,
                "creationInfo": SCAFFOLD_CREATION_INFO,
                "name": "PLACEHOLDER supplier",
            },
            package,
            license_relationship("hasConcludedLicense"),
            license_relationship("hasDeclaredLicense"),
        ],
    }


@click.command("scaffold")
@click.argument("kind", type=click.Choice(["ai", "dataset"]))
@click.argument("out", type=click.Path(dir_okay=False, path_type=Path))
def scaffold_command(kind: str, out: Path):
    """Write a template BOM with every mandatory field filled by a placeholder."""
    document, _ = read_document(json.dumps(scaffold_graph(kind)))
    try:
        out.write_bytes(write_document(document))
    except OSError as e:
        logger.error(f"Cannot write {out}: {e}")
        _exit(ExitStatus.ERROR)

    click.echo(f"Wrote {kind} template to {out}; replace every PLACEHOLDER value before publishing.")
    _exit(ExitStatus.OK)


# =============================================================================
# canonicalize
# =============================================================================


@click.command("canonicalize")
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--in-place", is_flag=True, help="Rewrite the file instead of printing to stdout.")
def canonicalize_command(file: Path, in_place: bool):
    """Rewrite a BOM in canonical key and graph order."""
    document = _load(file)
    data = write_document(document)

    if in_place:
        try:
            file.write_bytes(data)
        except OSError as e:
            logger.error(f"Cannot write {file}: {e}")
            _exit(ExitStatus.ERROR)
        logger.info(f"Canonicalized {file} in place")
    else:
        stdout = click.get_binary_stream("stdout")
        stdout.write(data)
        stdout.flush()
    _exit(ExitStatus.OK)


# =============================================================================
# rules / frameworks
# =============================================================================


@click.command("rules")
@click.option("--output", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True)
def rules_command(output_format: str):
    """Print the validator rule catalog."""
    rules = rule_catalog()
    if output_format == "json":
        click.echo(rules_to_json(rules))
    else:
        rows = [
            {"id": r.id, "severity": r.severity.value, "target": r.target, "summary": r.summary}
            for r in rules
        ]
        click.echo(_table(rows, ["id", "severity", "target", "summary"]))


@click.command("frameworks")
@click.option("--output", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True)
def frameworks_command(output_format: str):
    """List the bundled regulatory frameworks."""
    rows = []
    for framework_id in list_frameworks():
        try:
            framework = load_framework(framework_id)
        except ValueError as e:
            logger.warning(f"Skipping malformed framework {framework_id}: {e}")
            continue
        rows.append({"id": framework.id, "name": framework.name, "requirements": len(framework.requirements)})

    if output_format == "json":
        click.echo(json.dumps(rows, indent=2, ensure_ascii=False))
    else:
        click.echo(_table(rows, ["id", "name", "requirements"]))


# =============================================================================
# Group
# =============================================================================


@click.group()
@click.version_option(version=__version__, prog_name="aibomkit")
@click.option("--log-level", default=None, help="Logging level for messages on stderr (default from AIBOMKIT_LOG_LEVEL).")
def cli(log_level: Optional[str]):
    """aibomkit: SPDX 3.0 AI and Dataset BOM toolkit."""
    level = (log_level or config.log_level).upper()
    try:
        setup_sanitized_logging(level)
    except ValueError:
        raise click.BadParameter(f"unknown logging level {level}", param_hint="--log-level")


cli.add_command(validate_command)
cli.add_command(report_command)
cli.add_command(inspect_command)
cli.add_command(scaffold_command)
cli.add_command(canonicalize_command)
cli.add_command(rules_command)
cli.add_command(frameworks_command)
