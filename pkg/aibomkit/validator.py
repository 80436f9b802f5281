"""
Profile-conformance validator for AI and Dataset packages.

This module handles:
- The static rule catalog (mandatory fields, cardinality, enumerations,
  formats, relationship constraints, document-level checks)
- Running every applicable rule over a document and ordering the findings
- Summarising findings as conformant / conformant with notes / non-conformant

Problems in a document are reported as Diagnostic values, never raised.
"""

import json
import logging
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .document import SpdxDocument, infer_profiles
from .model import (
    OPAQUE_ELEMENT_TYPES,
    PACKAGE_PROPERTIES,
    PASSTHROUGH_PROPERTIES,
    AIPackage,
    Agent,
    CreationInfo,
    DatasetPackage,
    DictionaryEntry,
    EnergyConsumption,
    EnergyConsumptionDescription,
    EnergyUnit,
    FileArtifact,
    GenericElement,
    Node,
    Problem,
    Relationship,
    RelationshipType,
    ValueKind,
    is_empty,
    is_valid_iri,
    property_spec,
    property_value,
)

logger = logging.getLogger(__name__)

PLACEHOLDER_NAMESPACE = "https://example.invalid/"
PLACEHOLDER_TEXT = "PLACEHOLDER"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class RuleCategory(str, Enum):
    MANDATORY = "mandatory"
    CARDINALITY = "cardinality"
    ENUM = "enum"
    FORMAT = "format"
    CONTENT = "content"
    RELATIONSHIP = "relationship"
    DOCUMENT = "document"


# Categories that judge a single value in isolation.
FIELD_LOCAL_CATEGORIES = frozenset({
    RuleCategory.CARDINALITY,
    RuleCategory.ENUM,
    RuleCategory.FORMAT,
    RuleCategory.CONTENT,
})


class ConformanceStatus(str, Enum):
    CONFORMANT = "conformant"
    CONFORMANT_WITH_NOTES = "conformant with notes"
    NON_CONFORMANT = "non-conformant"


class Rule(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    id: str
    severity: Severity
    target: str
    category: RuleCategory
    summary: str
    citation: str = Field(default="", alias="paperCitation")
    property: Optional[str] = None


class Diagnostic(BaseModel):
    """One validator finding."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    rule_id: str = Field(alias="ruleId")
    severity: Severity
    element_id: Optional[str] = Field(default=None, alias="elementId")
    path: str = ""
    message: str
    citation: str = Field(default="", alias="paperCitation")

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True, mode="json")


# =============================================================================
# Rule catalog
# =============================================================================

AI_MANDATORY_FIELDS: Tuple[Tuple[str, str, str], ...] = (
    ("AI-M-01", "buildTime", "Required(1..1)"),
    ("AI-M-02", "downloadLocation", "Required(1..*)"),
    ("AI-M-03", "name", "Required(1..1)"),
    ("AI-M-04", "packageVersion", "Required(1..1)"),
    ("AI-M-05", "primaryPurpose", "Required(1..1)"),
    ("AI-M-06", "releaseTime", "Required(1..1)"),
    ("AI-M-07", "spdxId", "Required(1..1)"),
    ("AI-M-08", "suppliedBy", "Required(1..*)"),
)

DATASET_MANDATORY_FIELDS: Tuple[Tuple[str, str, str], ...] = (
    ("DS-M-01", "buildTime", "Required(1..1)"),
    ("DS-M-02", "dataset_datasetType", "Required(1..1)"),
    ("DS-M-03", "downloadLocation", "Required(1..*)"),
    ("DS-M-04", "originatedBy", "Required(1..*)"),
    ("DS-M-05", "packageVersion", "Required(1..1)"),
    ("DS-M-06", "primaryPurpose", "Required(1..1)"),
    ("DS-M-07", "name", "Required(1..1)"),
    ("DS-M-08", "releaseTime", "Required(1..1)"),
    ("DS-M-09", "spdxId", "Required(1..1)"),
)

LICENSE_RULES: Dict[type, Tuple[Tuple[RelationshipType, str], ...]] = {
    AIPackage: (
        (RelationshipType.HAS_CONCLUDED_LICENSE, "AI-M-09"),
        (RelationshipType.HAS_DECLARED_LICENSE, "AI-M-10"),
    ),
    DatasetPackage: (
        (RelationshipType.HAS_CONCLUDED_LICENSE, "DS-M-10"),
        (RelationshipType.HAS_DECLARED_LICENSE, "DS-M-11"),
    ),
}

_PROFILE_LABELS = {AIPackage: "AI profile", DatasetPackage: "Dataset profile"}
_RULE_PREFIXES = {AIPackage: "AI", DatasetPackage: "DS"}


def _mandatory_rules(cls, fields) -> List[Rule]:
    label = _PROFILE_LABELS[cls]
    rules = []
    for rule_id, name, cardinality in fields:
        local = name.split("_", 1)[-1]
        rules.append(Rule(
            id=rule_id, severity=Severity.ERROR, target=cls.__name__, category=RuleCategory.MANDATORY,
            summary=f"{cls.__name__} carries a non-empty {local}",
            citation=f"{label} mandatory fields: {local} {cardinality}",
            property=name,
        ))
    for relationship_type, rule_id in LICENSE_RULES[cls]:
        rules.append(Rule(
            id=rule_id, severity=Severity.ERROR, target=cls.__name__, category=RuleCategory.MANDATORY,
            summary=f"Exactly one {relationship_type.value} relationship from each {cls.__name__}",
            citation=(f"{label} mandatory fields: relationshipType = {relationship_type.value} Required(1..1); "
                      f"there MUST exist exactly one Relationship of type {relationship_type.value}"),
            property=relationship_type.value,
        ))
    return rules


def _cardinality_rules(cls) -> List[Rule]:
    prefix = _RULE_PREFIXES[cls]
    label = _PROFILE_LABELS[cls]
    mandatory = {name for _, name, _ in _fields_for(cls)}
    rules = []
    specs = [spec for spec in PACKAGE_PROPERTIES[cls] if not spec.multi]
    for number, spec in enumerate(specs, start=1):
        if spec.json_name in mandatory:
            citation = f"{label} mandatory fields: {spec.local_name} Required(1..1)"
        elif spec.profile in ("ai", "dataset"):
            citation = f"{label} optional fields: {spec.local_name} Optional(0..1)"
        else:
            citation = f"{spec.profile.capitalize()} profile: {spec.local_name} (0..1)"
        rules.append(Rule(
            id=f"{prefix}-C-{number:02d}", severity=Severity.ERROR, target=cls.__name__,
            category=RuleCategory.CARDINALITY,
            summary=f"{spec.local_name} holds at most one value",
            citation=citation, property=spec.json_name,
        ))
    return rules


def _fields_for(cls):
    return AI_MANDATORY_FIELDS if cls is AIPackage else DATASET_MANDATORY_FIELDS


def _enum_rules(cls) -> List[Rule]:
    prefix = _RULE_PREFIXES[cls]
    specs = [spec for spec in PACKAGE_PROPERTIES[cls] if spec.kind == ValueKind.ENUM]
    entries = [(spec.json_name, spec.local_name, spec.enum) for spec in specs]
    if cls is AIPackage:
        entries.append(("ai_energyUnit", "energyUnit", EnergyUnit))

    rules = []
    for number, (json_name, local, enum_cls) in enumerate(entries, start=1):
        tokens = ", ".join(member.value for member in enum_cls)
        rules.append(Rule(
            id=f"{prefix}-E-{number:02d}", severity=Severity.ERROR, target=cls.__name__,
            category=RuleCategory.ENUM,
            summary=f"{local} is one of the {enum_cls.__name__} tokens (exact, case-sensitive)",
            citation=f"{local}: {tokens}",
            property=json_name,
        ))
    return rules


def _static_rules() -> List[Rule]:
    def rule(rule_id, severity, target, category, summary, citation="", prop=None):
        return Rule(id=rule_id, severity=severity, target=target, category=category,
                    summary=summary, citation=citation, property=prop)

    E, W, I = Severity.ERROR, Severity.WARNING, Severity.INFO
    C = RuleCategory
    return [
        rule("DS-W-01", W, "DatasetPackage", C.MANDATORY,
             "DatasetPackage names the agent that supplied it",
             "Common package fields: suppliedBy (absent from the Dataset profile mandatory table)", "suppliedBy"),
        rule("AI-F-01", E, "AIPackage", C.FORMAT,
             "energyQuantity is a non-negative decimal", "energyQuantity: xsd:decimal", "ai_energyQuantity"),
        rule("DS-F-01", E, "DatasetPackage", C.FORMAT,
             "datasetSize is a non-negative integer number of bytes",
             "datasetSize: Captures how large a dataset is, in bytes", "dataset_datasetSize"),
        rule("AI-EC-01", E, "AIPackage", C.CONTENT,
             "Every energy consumption record carries energyQuantity and energyUnit",
             "energyConsumption: then energyQuantity and energyUnit are mandatory"),
        rule("AI-EC-02", W, "AIPackage", C.CONTENT,
             "EnergyConsumption lists training, finetuning or inference consumption",
             "energyConsumption: training, inference, and fine-tuning energy consumption"),
        rule("CORE-E-01", E, "Relationship", C.ENUM,
             "relationshipType is a known relationship type",
             "relationshipType: " + ", ".join(member.value for member in RelationshipType), "relationshipType"),
        rule("CORE-E-02", E, "File", C.ENUM,
             "File primaryPurpose is a SoftwarePurpose token", "primaryPurpose: SoftwarePurpose", "primaryPurpose"),
        rule("CORE-F-01", E, "Element", C.FORMAT,
             "Timestamps use the form YYYY-MM-DDThh:mm:ssZ",
             "buildTime: Its ISO-8601 format is YYYY-MM-DDThh:mm:ssZ"),
        rule("CORE-F-02", E, "Element", C.FORMAT,
             "spdxId and downloadLocation are absolute IRIs", "spdxId: Type: xsd:anyURI"),
        rule("CORE-F-03", E, "Element", C.FORMAT, "Property value has the expected JSON type"),
        rule("CORE-C-01", E, "Element", C.CARDINALITY, "Single-valued property holds at most one value"),
        rule("AGENT-01", E, "Agent", C.CONTENT,
             "Agents have a non-empty name", "suppliedBy: Type: Agent (Organization or Person)", "name"),
        rule("DICT-01", E, "DictionaryEntry", C.CONTENT,
             "DictionaryEntry keys are non-empty", "hyperparameter: Type: /Core/DictionaryEntry", "key"),
        rule("FILE-01", E, "File", C.CONTENT, "Files have a non-empty name", "", "name"),
        rule("REL-01", E, "Relationship", C.RELATIONSHIP,
             "Relationship lists at least one target in to", "Relationship: to (1..*)", "to"),
        rule("REL-02", E, "Relationship", C.RELATIONSHIP,
             "License relationships do not point back at their source",
             "hasConcludedLicense: having that element as its from property", "to"),
        rule("REL-03", W, "AIPackage", C.RELATIONSHIP,
             "At most one trainedOn relationship per AIPackage",
             "AI profile optional fields: relationshipType = trainedOn Optional(0..1)", "trainedOn"),
        rule("REL-04", W, "AIPackage", C.RELATIONSHIP,
             "At most one testedOn relationship per AIPackage",
             "AI profile optional fields: relationshipType = testedOn Optional(0..1)", "testedOn"),
        rule("REL-05", I, "Relationship", C.RELATIONSHIP,
             "Relationship source is an element of this document", "", "from"),
        rule("REL-06", E, "Relationship", C.RELATIONSHIP,
             "Relationship names its source element in from", "Relationship: from (1..1)", "from"),
        rule("REL-07", E, "Relationship", C.RELATIONSHIP,
             "Relationship carries a relationshipType", "Relationship: relationshipType (1..1)", "relationshipType"),
        rule("DOC-01", W, "SpdxDocument", C.DOCUMENT,
             "Document names its root elements",
             "The rootElement of the BOM is a DatasetPackage instance", "rootElement"),
        rule("DOC-02", E, "SpdxDocument", C.DOCUMENT,
             "Every root element is present in the document", "", "rootElement"),
        rule("DOC-03", I, "Element", C.DOCUMENT, "Unknown property carried opaquely"),
        rule("DOC-04", E, "CreationInfo", C.DOCUMENT,
             "CreationInfo names at least one creator", "createdBy in CreationInfo", "createdBy"),
        rule("DOC-05", I, "Element", C.DOCUMENT, "Element of unknown type carried opaquely"),
        rule("DOC-06", W, "Element", C.CONTENT, "Placeholder content left from a template"),
    ]


def _build_catalog() -> Tuple[Rule, ...]:
    rules: List[Rule] = []
    for cls, fields in ((AIPackage, AI_MANDATORY_FIELDS), (DatasetPackage, DATASET_MANDATORY_FIELDS)):
        rules.extend(_mandatory_rules(cls, fields))
        rules.extend(_cardinality_rules(cls))
        rules.extend(_enum_rules(cls))
    rules.extend(_static_rules())
    return tuple(sorted(rules, key=lambda r: r.id))


def rule_catalog() -> List[Rule]:
    """The full static rule catalog, sorted by rule id."""
    return list(_CATALOG)


def get_rule(rule_id: str) -> Rule:
    return _RULES_BY_ID[rule_id]


def find_rule(target: str, category: RuleCategory, prop: str) -> Optional[Rule]:
    """Rule of a category bound to one property of a target class."""
    return _RULES_BY_PROPERTY.get((target, category, prop))


_CATALOG: Tuple[Rule, ...] = ()
_RULES_BY_ID: Dict[str, Rule] = {}
_RULES_BY_PROPERTY: Dict[Tuple[str, RuleCategory, str], Rule] = {}


def _index_catalog():
    global _CATALOG, _RULES_BY_ID, _RULES_BY_PROPERTY
    _CATALOG = _build_catalog()
    _RULES_BY_ID = {rule.id: rule for rule in _CATALOG}
    _RULES_BY_PROPERTY = {
        (rule.target, rule.category, rule.property): rule
        for rule in _CATALOG if rule.property is not None
    }


_index_catalog()


def _diagnostic(rule_id: str, element_id: Optional[str], path: str, message: str) -> Diagnostic:
    rule = _RULES_BY_ID[rule_id]
    return Diagnostic(
        rule_id=rule.id, severity=rule.severity, element_id=element_id,
        path=path, message=message, citation=rule.citation,
    )


def _join(prefix: str, name: str) -> str:
    return f"{prefix}.{name}" if prefix else name


def _missing(value: Any) -> bool:
    if is_empty(value):
        return True
    if isinstance(value, tuple):
        return all(is_empty(item) for item in value)
    return False


# =============================================================================
# Package checks
# =============================================================================


def _rejected_spec(package, spec) -> bool:
    """True when a value for this property was kept as rejected."""
    for entry in package.rejected:
        if property_spec(type(package), entry.property) == spec:
            return True
    return False


def check_mandatory_fields(package) -> List[Diagnostic]:
    """
    Report each mandatory field of an AIPackage or DatasetPackage that is
    missing or empty. Fields whose value was rejected are reported by the
    format and enumeration rules instead.

    Args:
        package: AIPackage or DatasetPackage

    Returns:
        One error diagnostic per missing field
    """
    diagnostics = []
    cls = type(package)
    for rule_id, name, _ in _fields_for(cls):
        if name == "spdxId":
            if _missing(package.core.spdx_id) and package.rejected_property("spdxId") is None:
                diagnostics.append(_diagnostic(rule_id, None, "spdxId", "Mandatory field spdxId is missing"))
            continue

        spec = property_spec(cls, name)
        if _rejected_spec(package, spec):
            continue
        if _missing(property_value(package, spec)):
            diagnostics.append(_diagnostic(
                rule_id, package.element_id, spec.json_name,
                f"Mandatory field {spec.local_name} is missing or empty",
            ))

    if isinstance(package, DatasetPackage) and _missing(package.core.supplied_by):
        spec = property_spec(cls, "suppliedBy")
        if not _rejected_spec(package, spec):
            diagnostics.append(_diagnostic(
                "DS-W-01", package.element_id, "suppliedBy",
                "suppliedBy is absent; the common package fields expect a supplier",
            ))
    return diagnostics


def check_license_relationships(document: SpdxDocument, package_id: str) -> List[Diagnostic]:
    """
    Check that exactly one hasConcludedLicense and exactly one
    hasDeclaredLicense relationship leave the package.

    Relationships are counted, not license values: one relationship with
    several targets counts once.

    Args:
        document: Document holding the package and its relationships
        package_id: Id of an AIPackage or DatasetPackage

    Returns:
        One error per license relationship type whose count is not 1
    """
    package = document.get(package_id)
    if not isinstance(package, (AIPackage, DatasetPackage)):
        return []

    diagnostics = []
    for relationship_type, rule_id in LICENSE_RULES[type(package)]:
        count = len(document.relationships_from(package_id, relationship_type))
        if count != 1:
            diagnostics.append(_diagnostic(
                rule_id, package_id, relationship_type.value,
                f"Expected exactly one {relationship_type.value} relationship, found {count}",
            ))
    return diagnostics


def check_conditional_energy(package: AIPackage) -> List[Diagnostic]:
    """
    Every EnergyConsumptionDescription under energyConsumption must carry
    both energyQuantity and energyUnit. No energyConsumption means nothing
    to check.
    """
    if package.energy_consumption is None:
        return []
    return energy_diagnostics(package.energy_consumption, package.element_id, "ai_energyConsumption")


def energy_diagnostics(consumption: EnergyConsumption, element_id: Optional[str],
                       path: str) -> List[Diagnostic]:
    diagnostics = []
    described = False
    for prop, index, description in consumption.descriptions():
        described = True
        diagnostics.extend(
            _description_diagnostics(description, element_id, _join(path, f"{prop}[{index}]"))
        )
    if not described and not consumption.rejected:
        diagnostics.append(_diagnostic(
            "AI-EC-02", element_id, path,
            "EnergyConsumption lists no training, finetuning or inference consumption",
        ))
    return diagnostics


def _description_diagnostics(description: EnergyConsumptionDescription, element_id: Optional[str],
                             path: str) -> List[Diagnostic]:
    diagnostics = []
    for prop, value in (("ai_energyQuantity", description.energy_quantity),
                        ("ai_energyUnit", description.energy_unit)):
        if value is None and description.rejected_property(prop) is None:
            diagnostics.append(_diagnostic(
                "AI-EC-01", element_id, _join(path, prop),
                f"{prop.split('_', 1)[1]} is mandatory in an energy consumption record",
            ))
    return diagnostics


def _rejection_rule(target: str, prop: str, problem: Problem, cls=None) -> str:
    if problem == Problem.ENUM:
        name = property_spec(cls, prop).json_name if cls and property_spec(cls, prop) else prop
        rule = find_rule(target, RuleCategory.ENUM, name)
        if rule is not None:
            return rule.id
        if target == "Relationship":
            return "CORE-E-01"
        if target == "File":
            return "CORE-E-02"
        return "CORE-F-03"
    if problem == Problem.CARDINALITY:
        name = property_spec(cls, prop).json_name if cls and property_spec(cls, prop) else prop
        rule = find_rule(target, RuleCategory.CARDINALITY, name)
        return rule.id if rule is not None else "CORE-C-01"
    return {
        Problem.TIMESTAMP: "CORE-F-01",
        Problem.IRI: "CORE-F-02",
        Problem.INTEGER: "DS-F-01",
        Problem.DECIMAL: "AI-F-01",
    }.get(problem, "CORE-F-03")


def _node_diagnostics(node: Node, target: str, element_id: Optional[str], path: str,
                      cls=None) -> List[Diagnostic]:
    """Rejected values and unknown properties of one node."""
    diagnostics = []
    for entry in node.rejected:
        diagnostics.append(_diagnostic(
            _rejection_rule(target, entry.property, entry.problem, cls),
            element_id, _join(path, entry.property),
            f"Rejected value {json.dumps(entry.value, ensure_ascii=False, default=str)}: {entry.detail}",
        ))
    for key in node.extras:
        if key not in PASSTHROUGH_PROPERTIES:
            diagnostics.append(_diagnostic(
                "DOC-03", element_id, _join(path, key), f"Unknown property '{key}' carried opaquely",
            ))
    return diagnostics


def _agent_diagnostics(agent: Agent, element_id: Optional[str], path: str) -> List[Diagnostic]:
    diagnostics = _node_diagnostics(agent, "Agent", element_id, path)
    if _missing(agent.name) and agent.rejected_property("name") is None:
        diagnostics.append(_diagnostic("AGENT-01", element_id, _join(path, "name"),
                                       f"{agent.type_tag} has no name"))
    return diagnostics


def _agent_refs_diagnostics(refs, element_id: Optional[str], path: str) -> List[Diagnostic]:
    diagnostics = []
    for index, ref in enumerate(refs):
        if isinstance(ref, Agent):
            diagnostics.extend(_agent_diagnostics(ref, element_id, f"{path}[{index}]"))
    return diagnostics


def _dictionary_diagnostics(entries, target: str, element_id: Optional[str], path: str) -> List[Diagnostic]:
    diagnostics = []
    for index, entry in enumerate(entries):
        entry_path = f"{path}[{index}]"
        diagnostics.extend(_node_diagnostics(entry, target, element_id, entry_path))
        if _missing(entry.key) and entry.rejected_property("key") is None:
            diagnostics.append(_diagnostic("DICT-01", element_id, _join(entry_path, "key"),
                                           "DictionaryEntry key is empty"))
    return diagnostics


def _energy_tree_diagnostics(consumption: EnergyConsumption, element_id: Optional[str],
                             path: str) -> List[Diagnostic]:
    """Format problems and unknown properties inside an EnergyConsumption tree."""
    diagnostics = _node_diagnostics(consumption, "AIPackage", element_id, path)
    for prop, index, description in consumption.descriptions():
        diagnostics.extend(_node_diagnostics(description, "AIPackage", element_id,
                                             _join(path, f"{prop}[{index}]")))
    return diagnostics


def _package_diagnostics(document: SpdxDocument, key: str, package) -> List[Diagnostic]:
    cls = type(package)
    target = cls.__name__
    element_id = package.element_id
    diagnostics = check_mandatory_fields(package)

    if element_id is not None:
        diagnostics.extend(check_license_relationships(document, key))
        if not is_valid_iri(element_id):
            diagnostics.append(_diagnostic("CORE-F-02", element_id, "spdxId",
                                           f"spdxId '{element_id}' is not an absolute IRI"))

    diagnostics.extend(_node_diagnostics(package, target, element_id, "", cls))
    diagnostics.extend(_agent_refs_diagnostics(package.core.supplied_by, element_id, "suppliedBy"))
    diagnostics.extend(_agent_refs_diagnostics(package.core.originated_by, element_id, "originatedBy"))

    if isinstance(package, AIPackage):
        diagnostics.extend(check_conditional_energy(package))
        if package.energy_consumption is not None:
            diagnostics.extend(_energy_tree_diagnostics(package.energy_consumption, element_id,
                                                        "ai_energyConsumption"))
        for prop, entries in (("ai_hyperparameter", package.hyperparameter),
                              ("ai_metric", package.metric),
                              ("ai_metricDecisionThreshold", package.metric_decision_threshold)):
            diagnostics.extend(_dictionary_diagnostics(entries, target, element_id, prop))
        if element_id is not None:
            for relationship_type, rule_id in ((RelationshipType.TRAINED_ON, "REL-03"),
                                               (RelationshipType.TESTED_ON, "REL-04")):
                count = len(document.relationships_from(element_id, relationship_type))
                if count > 1:
                    diagnostics.append(_diagnostic(
                        rule_id, element_id, relationship_type.value,
                        f"{count} {relationship_type.value} relationships; one listing every dataset is expected",
                    ))
    else:
        diagnostics.extend(_dictionary_diagnostics(package.sensor, target, element_id, "dataset_sensor"))

    return diagnostics


# =============================================================================
# Other elements, relationships, document
# =============================================================================


def _element_diagnostics(document: SpdxDocument, key: str, element) -> List[Diagnostic]:
    if isinstance(element, (AIPackage, DatasetPackage)):
        diagnostics = _package_diagnostics(document, key, element)
    elif isinstance(element, FileArtifact):
        diagnostics = _node_diagnostics(element, "File", element.element_id, "")
        if _missing(element.name) and element.rejected_property("name") is None:
            diagnostics.append(_diagnostic("FILE-01", element.element_id, "name", "File has no name"))
    elif isinstance(element, Agent):
        diagnostics = _agent_diagnostics(element, element.element_id, "")
    elif isinstance(element, GenericElement) and element.type_tag not in OPAQUE_ELEMENT_TYPES:
        diagnostics = [_diagnostic("DOC-05", element.element_id, "type",
                                   f"Element of unknown type '{element.type_tag}' carried opaquely")]
    else:
        diagnostics = []

    # packages check their own spdxId
    if not isinstance(element, (AIPackage, DatasetPackage)) and element.element_id is not None \
            and not is_valid_iri(element.element_id):
        diagnostics.append(_diagnostic("CORE-F-02", element.element_id, "spdxId",
                                       f"spdxId '{element.element_id}' is not an absolute IRI"))

    placeholder = _placeholder_path(element)
    if placeholder is not None:
        diagnostics.append(_diagnostic("DOC-06", element.element_id, placeholder,
                                       "Placeholder value left from a template"))
    return diagnostics


def _relationship_diagnostics(document: SpdxDocument, relationship: Relationship) -> List[Diagnostic]:
    element_id = relationship.spdx_id or relationship.from_id
    diagnostics = _node_diagnostics(relationship, "Relationship", element_id, "")

    if relationship.relationship_type is None and relationship.rejected_property("relationshipType") is None:
        diagnostics.append(_diagnostic("REL-07", element_id, "relationshipType",
                                       "Relationship has no relationshipType"))
    if _missing(relationship.from_id) and relationship.rejected_property("from") is None:
        diagnostics.append(_diagnostic("REL-06", element_id, "from", "Relationship has no source in from"))
    elif relationship.from_id is not None and relationship.from_id not in document.elements:
        diagnostics.append(_diagnostic("REL-05", element_id, "from",
                                       f"Source '{relationship.from_id}' is not an element of this document"))
    if not relationship.to and relationship.rejected_property("to") is None:
        diagnostics.append(_diagnostic("REL-01", element_id, "to", "Relationship has no targets in to"))
    if relationship.is_license and relationship.from_id in relationship.to:
        diagnostics.append(_diagnostic("REL-02", element_id, "to",
                                       "License relationship points back at its source"))
    if relationship.spdx_id is not None and not is_valid_iri(relationship.spdx_id):
        diagnostics.append(_diagnostic("CORE-F-02", element_id, "spdxId",
                                       f"spdxId '{relationship.spdx_id}' is not an absolute IRI"))

    placeholder = _placeholder_path(relationship)
    if placeholder is not None:
        diagnostics.append(_diagnostic("DOC-06", element_id, placeholder,
                                       "Placeholder value left from a template"))
    return diagnostics


def _creation_info_diagnostics(info: CreationInfo, path: str) -> List[Diagnostic]:
    diagnostics = _node_diagnostics(info, "CreationInfo", None, path)
    if not info.created_by and info.rejected_property("createdBy") is None:
        diagnostics.append(_diagnostic("DOC-04", None, _join(path, "createdBy"),
                                       "CreationInfo names no creator in createdBy"))
    diagnostics.extend(_agent_refs_diagnostics(info.created_by, None, _join(path, "createdBy")))
    return diagnostics


def _value_node_diagnostics(node) -> List[Diagnostic]:
    if isinstance(node, EnergyConsumption):
        return energy_diagnostics(node, None, "") + _energy_tree_diagnostics(node, None, "")
    if isinstance(node, EnergyConsumptionDescription):
        return (_description_diagnostics(node, None, "")
                + _node_diagnostics(node, "AIPackage", None, ""))
    if isinstance(node, DictionaryEntry):
        diagnostics = _node_diagnostics(node, "DictionaryEntry", None, "")
        if _missing(node.key) and node.rejected_property("key") is None:
            diagnostics.append(_diagnostic("DICT-01", None, "key", "DictionaryEntry key is empty"))
        return diagnostics
    return _creation_info_diagnostics(node, "creationInfo")


def _document_diagnostics(document: SpdxDocument) -> List[Diagnostic]:
    diagnostics = []
    if not document.root_elements:
        diagnostics.append(_diagnostic("DOC-01", document.spdx_id, "rootElement",
                                       "Document names no root elements"))
    for root in document.root_elements:
        if root not in document.elements:
            diagnostics.append(_diagnostic("DOC-02", document.spdx_id, "rootElement",
                                           f"Root element '{root}' is not in the document"))
    if document.creation_info is not None:
        diagnostics.extend(_creation_info_diagnostics(document.creation_info, "creationInfo"))
    if document.spdx_id is not None and _has_placeholder(document.spdx_id):
        diagnostics.append(_diagnostic("DOC-06", document.spdx_id, "spdxId",
                                       "Placeholder value left from a template"))
    return diagnostics


def _has_placeholder(text: str) -> bool:
    return text.startswith(PLACEHOLDER_NAMESPACE) or PLACEHOLDER_TEXT in text


def _placeholder_path(node) -> Optional[str]:
    """JSON path of the first placeholder text in an element or relationship, or None."""
    from .serialization import canonicalize, element_to_node, relationship_to_node

    def walk(value: Any, path: str) -> Optional[str]:
        if isinstance(value, str):
            return path if _has_placeholder(value) else None
        if isinstance(value, dict):
            items = value.items()
        elif isinstance(value, (list, tuple)):
            items = ((f"[{i}]", item) for i, item in enumerate(value))
        else:
            return None
        for key, item in items:
            found = walk(item, f"{path}{key}" if key.startswith("[") else _join(path, key))
            if found is not None:
                return found
        return None

    rendered = relationship_to_node(node) if isinstance(node, Relationship) else element_to_node(node)
    rejected = {entry.property for entry in node.rejected}
    rendered = {key: value for key, value in canonicalize(rendered).items()
                if key != "type" and key not in rejected}
    return walk(rendered, "")


# =============================================================================
# Entry points
# =============================================================================


def _downgrade(diagnostic: Diagnostic) -> Diagnostic:
    if diagnostic.severity != Severity.ERROR:
        return diagnostic
    return diagnostic.model_copy(update={
        "severity": Severity.WARNING,
        "message": f"{diagnostic.message} (profile not declared)",
    })


def validate_document(document: SpdxDocument, profiles: Optional[Iterable[str]] = None) -> List[Diagnostic]:
    """
    Run every applicable rule over a document.

    Packages whose profile (ai or dataset) is not among the active profiles
    are still checked, with their errors downgraded to warnings.

    Args:
        document: Document to check
        profiles: Active profile tokens; defaults to the document's declaration

    Returns:
        Diagnostics ordered by (element document order, rule id, path);
        empty when the document is conformant
    """
    active = set(profiles) if profiles is not None else set(infer_profiles(document))
    collected: List[Tuple[int, Diagnostic]] = [(-1, d) for d in _document_diagnostics(document)]

    position = 0
    for key, element in document.elements.items():
        diagnostics = _element_diagnostics(document, key, element)
        if isinstance(element, (AIPackage, DatasetPackage)) and element.profile not in active:
            diagnostics = [_downgrade(d) for d in diagnostics]
        collected.extend((position, d) for d in diagnostics)
        position += 1

    for node in document.value_nodes:
        collected.extend((position, d) for d in _value_node_diagnostics(node))
        position += 1

    for relationship in document.relationships:
        collected.extend((position, d) for d in _relationship_diagnostics(document, relationship))
        position += 1

    collected.sort(key=lambda item: (item[0], item[1].rule_id, item[1].path))
    diagnostics = [d for _, d in collected]

    logger.debug(f"Validated {len(document.elements)} elements against {sorted(active)}: "
                 f"{len(diagnostics)} diagnostics")
    return diagnostics


def validate_fields(document: SpdxDocument) -> List[Diagnostic]:
    """Only the field-local findings: cardinality, enumeration, format, content."""
    return [
        d for d in validate_document(document, ("ai", "dataset"))
        if _RULES_BY_ID[d.rule_id].category in FIELD_LOCAL_CATEGORIES
    ]


def unknown_content_diagnostics(document: SpdxDocument) -> List[Diagnostic]:
    """Notes about unknown element types and unknown properties."""
    return [
        d for d in validate_document(document, ("ai", "dataset"))
        if d.rule_id in ("DOC-03", "DOC-05")
    ]


def conformance_summary(diagnostics: Iterable[Diagnostic]) -> ConformanceStatus:
    severities = {d.severity for d in diagnostics}
    if Severity.ERROR in severities:
        return ConformanceStatus.NON_CONFORMANT
    if severities:
        return ConformanceStatus.CONFORMANT_WITH_NOTES
    return ConformanceStatus.CONFORMANT


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.severity == Severity.ERROR for d in diagnostics)


def format_diagnostic(diagnostic: Diagnostic) -> str:
    subject = diagnostic.element_id or "-"
    location = f" [{diagnostic.path}]" if diagnostic.path else ""
    return (f"{diagnostic.severity.value.upper():<7} {diagnostic.rule_id:<9} "
            f"{subject}{location}: {diagnostic.message}")


def diagnostics_to_json(diagnostics: Iterable[Diagnostic]) -> str:
    return json.dumps([d.to_dict() for d in diagnostics], indent=2, ensure_ascii=False)


def rules_to_json(rules: Iterable[Rule]) -> str:
    return json.dumps([rule.model_dump(by_alias=True, mode="json") for rule in rules], indent=2, ensure_ascii=False)
