"""
Domain model for SPDX 3.0 AI and Dataset profile documents.

This module handles:
- Enumerations of the AI, Dataset, Core and Software profiles
- Scalar formats: UTC timestamps, absolute IRIs, license targets
- Immutable element types (AIPackage, DatasetPackage, File, Agent, ...)
- Property tables that drive reading, writing, validation and compliance

Container types are lenient on purpose: a package that lacks a mandatory
field can still be represented so the validator can report it. Values that
fail typed conversion are kept verbatim in the node's ``rejected`` list.
Scalar types (Timestamp, LicenseTarget and the enumerations) are strict.
"""

import re
from dataclasses import dataclass
from datetime import datetime
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Any, ClassVar, Dict, FrozenSet, Optional, Tuple, Type, TypeVar, Union

from dateutil import tz
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import BadIri, BadTimestamp, UnknownToken


# =============================================================================
# Enumerations
# =============================================================================


class Presence(str, Enum):
    """Three-valued assertion for facts that may be unknown."""

    YES = "yes"
    NO = "no"
    NO_ASSERTION = "noAssertion"


class SoftwarePurpose(str, Enum):
    """Primary intended function of a software artifact."""

    APPLICATION = "application"
    ARCHIVE = "archive"
    BOM = "bom"
    CONFIGURATION = "configuration"
    CONTAINER = "container"
    DATA = "data"
    DEVICE = "device"
    DEVICE_DRIVER = "deviceDriver"
    DISK_IMAGE = "diskImage"
    DOCUMENTATION = "documentation"
    EVIDENCE = "evidence"
    EXECUTABLE = "executable"
    FILE = "file"
    FILESYSTEM_IMAGE = "filesystemImage"
    FIRMWARE = "firmware"
    FRAMEWORK = "framework"
    INSTALL = "install"
    LIBRARY = "library"
    MANIFEST = "manifest"
    MODEL = "model"
    MODULE = "module"
    OPERATING_SYSTEM = "operatingSystem"
    OTHER = "other"
    PATCH = "patch"
    PLATFORM = "platform"
    REQUIREMENT = "requirement"
    SOURCE = "source"
    SPECIFICATION = "specification"
    TEST = "test"


class DatasetType(str, Enum):
    AUDIO = "audio"
    CATEGORICAL = "categorical"
    GRAPH = "graph"
    IMAGE = "image"
    NO_ASSERTION = "noAssertion"
    NUMERIC = "numeric"
    OTHER = "other"
    SENSOR = "sensor"
    STRUCTURED = "structured"
    SYNTACTIC = "syntactic"
    TEXT = "text"
    TIMESERIES = "timeseries"
    TIMESTAMP = "timestamp"
    VIDEO = "video"


class EnergyUnit(str, Enum):
    KILOWATT_HOUR = "kilowattHour"
    MEGAJOULE = "megajoule"
    OTHER = "other"


class SafetyRiskAssessment(str, Enum):
    """Risk classification following the EU general risk assessment methodology."""

    SERIOUS = "serious"
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"


class ConfidentialityLevel(str, Enum):
    """Traffic Light Protocol levels."""

    RED = "red"
    AMBER = "amber"
    GREEN = "green"
    CLEAR = "clear"


class DatasetAvailability(str, Enum):
    CLICKTHROUGH = "clickthrough"
    DIRECT_DOWNLOAD = "directDownload"
    QUERY = "query"
    REGISTRATION = "registration"
    SCRAPING_SCRIPT = "scrapingScript"


class RelationshipType(str, Enum):
    CONTAINS = "contains"
    DESCRIBES = "describes"
    HAS_CONCLUDED_LICENSE = "hasConcludedLicense"
    HAS_DECLARED_LICENSE = "hasDeclaredLicense"
    HAS_DOCUMENTATION = "hasDocumentation"
    TESTED_ON = "testedOn"
    TRAINED_ON = "trainedOn"
    OTHER = "other"


LICENSE_RELATIONSHIPS = frozenset({
    RelationshipType.HAS_CONCLUDED_LICENSE,
    RelationshipType.HAS_DECLARED_LICENSE,
})


class AgentKind(str, Enum):
    PERSON = "person"
    ORGANIZATION = "organization"
    TOOL = "tool"


AGENT_TYPE_TAGS: Dict[AgentKind, str] = {
    AgentKind.PERSON: "Person",
    AgentKind.ORGANIZATION: "Organization",
    AgentKind.TOOL: "Tool",
}
AGENT_KINDS_BY_TAG: Dict[str, AgentKind] = {tag: kind for kind, tag in AGENT_TYPE_TAGS.items()}


class Problem(str, Enum):
    """Why a property value could not be converted to its typed form."""

    ENUM = "enum"
    TIMESTAMP = "timestamp"
    IRI = "iri"
    CARDINALITY = "cardinality"
    INTEGER = "integer"
    DECIMAL = "decimal"
    SHAPE = "shape"


ENUM_KINDS: Dict[str, Type[Enum]] = {
    "Presence": Presence,
    "SoftwarePurpose": SoftwarePurpose,
    "DatasetType": DatasetType,
    "EnergyUnit": EnergyUnit,
    "SafetyRiskAssessment": SafetyRiskAssessment,
    "ConfidentialityLevel": ConfidentialityLevel,
    "DatasetAvailability": DatasetAvailability,
    "RelationshipType": RelationshipType,
}

E = TypeVar("E", bound=Enum)


def parse_enum(token: Any, kind: Union[Type[E], str]) -> E:
    """
    Map a token to the enumeration member with exactly that spelling.

    Args:
        token: Token as found in a document
        kind: Enumeration class, or its name in ENUM_KINDS

    Returns:
        The matching member

    Raises:
        UnknownToken: If no member matches (matching is case-sensitive)
    """
    enum_cls = ENUM_KINDS[kind] if isinstance(kind, str) else kind
    if isinstance(token, str):
        for member in enum_cls:
            if member.value == token:
                return member
    raise UnknownToken(enum_cls.__name__, str(token))


def render_enum(member: Enum) -> str:
    return member.value


# =============================================================================
# Scalar formats
# =============================================================================

_TIMESTAMP_RE = re.compile(r"([0-9]{4})-([0-9]{2})-([0-9]{2})T([0-9]{2}):([0-9]{2}):([0-9]{2})Z")
_IRI_SCHEME_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")


class Timestamp(BaseModel):
    """A UTC instant with second resolution."""

    model_config = ConfigDict(frozen=True)

    value: datetime

    @field_validator("value")
    @classmethod
    def _utc_whole_seconds(cls, value: datetime) -> datetime:
        if value.tzinfo is None or value.utcoffset().total_seconds() != 0:
            raise ValueError("timestamp must be in UTC")
        if value.microsecond:
            raise ValueError("timestamp has second resolution")
        return value.astimezone(tz.UTC)

    def __str__(self) -> str:
        return format_timestamp(self)


def parse_timestamp(text: Any) -> Timestamp:
    """
    Parse a timestamp of the exact form YYYY-MM-DDThh:mm:ssZ.

    Args:
        text: Timestamp text

    Returns:
        Timestamp that formats back to the identical string

    Raises:
        BadTimestamp: For the wrong shape, offsets other than Z, fractional
            seconds, or a date/time that does not exist
    """
    if not isinstance(text, str):
        raise BadTimestamp(str(text), "not a string")

    match = _TIMESTAMP_RE.fullmatch(text)
    if not match:
        raise BadTimestamp(text)

    year, month, day, hour, minute, second = (int(part) for part in match.groups())
    try:
        instant = datetime(year, month, day, hour, minute, second, tzinfo=tz.UTC)
    except ValueError as e:
        raise BadTimestamp(text, str(e))
    return Timestamp(value=instant)


def format_timestamp(timestamp: Timestamp) -> str:
    v = timestamp.value
    return f"{v.year:04d}-{v.month:02d}-{v.day:02d}T{v.hour:02d}:{v.minute:02d}:{v.second:02d}Z"


def validate_iri(text: Any) -> str:
    """
    Check that text is an absolute IRI.

    Args:
        text: Candidate IRI

    Returns:
        The input with surrounding whitespace removed

    Raises:
        BadIri: When there is no scheme or the IRI contains whitespace
    """
    if not isinstance(text, str):
        raise BadIri(str(text), "not a string")

    candidate = text.strip()
    if not candidate:
        raise BadIri(text, "empty")
    if any(ch.isspace() for ch in candidate):
        raise BadIri(text, "contains whitespace")

    scheme = _IRI_SCHEME_RE.match(candidate)
    if not scheme:
        raise BadIri(text, "no scheme")
    if scheme.end() == len(candidate):
        raise BadIri(text, "nothing after the scheme")
    return candidate


def is_valid_iri(text: Any) -> bool:
    try:
        validate_iri(text)
        return True
    except BadIri:
        return False


_DECIMAL_RE = re.compile(r"[0-9]+(\.[0-9]+)?|\.[0-9]+")


def is_non_negative_decimal(text: str) -> bool:
    """True when text is an unsigned xsd:decimal lexical form."""
    return bool(_DECIMAL_RE.fullmatch(text))


# =============================================================================
# License targets
# =============================================================================

LISTED_LICENSE_PREFIX = "https://spdx.org/licenses/"
NONE_LICENSE_MARKERS = frozenset({
    "NONE",
    "https://spdx.org/rdf/3.0.1/terms/Expanded/NoneLicense",
})
NOASSERTION_LICENSE_MARKERS = frozenset({
    "NOASSERTION",
    "https://spdx.org/rdf/3.0.1/terms/Expanded/NoAssertionLicense",
})


class LicenseTargetKind(str, Enum):
    LISTED = "listed"
    NONE = "none"
    NO_ASSERTION = "noAssertion"
    EXPRESSION = "expression"


class LicenseTarget(BaseModel):
    """The "to" side of a license relationship. Expressions stay opaque."""

    model_config = ConfigDict(frozen=True)

    kind: LicenseTargetKind
    value: str

    @model_validator(mode="after")
    def _listed_prefix(self) -> "LicenseTarget":
        if self.kind == LicenseTargetKind.LISTED and not self.value.startswith(LISTED_LICENSE_PREFIX):
            raise ValueError(f"listed license IRIs begin {LISTED_LICENSE_PREFIX}")
        return self


def classify_license_target(text: str) -> LicenseTarget:
    """
    Classify a license relationship target.

    Args:
        text: IRI or token found in the relationship's "to" list

    Returns:
        LicenseTarget with kind listed, none, noAssertion or expression
    """
    value = text.strip()
    if value in NONE_LICENSE_MARKERS:
        return LicenseTarget(kind=LicenseTargetKind.NONE, value=value)
    if value in NOASSERTION_LICENSE_MARKERS:
        return LicenseTarget(kind=LicenseTargetKind.NO_ASSERTION, value=value)
    if value.startswith(LISTED_LICENSE_PREFIX) and len(value) > len(LISTED_LICENSE_PREFIX):
        return LicenseTarget(kind=LicenseTargetKind.LISTED, value=value)
    return LicenseTarget(kind=LicenseTargetKind.EXPRESSION, value=value)


# =============================================================================
# Nodes
# =============================================================================


class RejectedValue(BaseModel):
    """A property value kept verbatim because it failed typed conversion."""

    model_config = ConfigDict(frozen=True)

    property: str
    value: Any
    problem: Problem
    detail: str = ""


class Node(BaseModel):
    """Common base: unknown properties and rejected values ride along."""

    model_config = ConfigDict(frozen=True)

    extras: Dict[str, Any] = Field(default_factory=dict)
    rejected: Tuple[RejectedValue, ...] = ()

    def rejected_property(self, name: str) -> Optional[RejectedValue]:
        for entry in self.rejected:
            if entry.property == name:
                return entry
        return None


class Agent(Node):
    """A person, organization or tool, inline or as a graph element."""

    kind: AgentKind
    name: Optional[str] = None
    spdx_id: Optional[str] = None
    external_identifiers: Tuple[Any, ...] = ()

    @property
    def type_tag(self) -> str:
        return AGENT_TYPE_TAGS[self.kind]

    @property
    def element_id(self) -> Optional[str]:
        return self.spdx_id


# Inline Agent object, or the spdxId of an Agent element.
AgentRef = Union[Agent, str]


class CreationInfo(Node):
    created: Optional[Timestamp] = None
    created_by: Tuple[AgentRef, ...] = ()
    node_id: Optional[str] = None


class DictionaryEntry(Node):
    key: str = ""
    value: Optional[str] = None


class EnergyConsumptionDescription(Node):
    energy_quantity: Optional[str] = None
    energy_unit: Optional[EnergyUnit] = None
    comment: Optional[str] = None

    @property
    def quantity(self) -> Optional[Decimal]:
        """Parsed energyQuantity; the lexical form stays in energy_quantity."""
        if self.energy_quantity is None:
            return None
        try:
            return Decimal(self.energy_quantity)
        except InvalidOperation:
            return None


class EnergyConsumption(Node):
    training: Tuple[EnergyConsumptionDescription, ...] = ()
    finetuning: Tuple[EnergyConsumptionDescription, ...] = ()
    inference: Tuple[EnergyConsumptionDescription, ...] = ()

    def descriptions(self):
        """Yield (property name, index, description) for every description."""
        for spec in ENERGY_CONSUMPTION_PROPERTIES:
            for index, description in enumerate(getattr(self, spec.attr)):
                yield spec.json_name, index, description


class PackageCore(BaseModel):
    """Core and Software profile fields shared by AI and Dataset packages."""

    model_config = ConfigDict(frozen=True)

    spdx_id: Optional[str] = None
    name: Optional[str] = None
    package_version: Optional[str] = None
    build_time: Optional[Timestamp] = None
    release_time: Optional[Timestamp] = None
    valid_until_time: Optional[Timestamp] = None
    download_location: Tuple[str, ...] = ()
    primary_purpose: Optional[SoftwarePurpose] = None
    supplied_by: Tuple[AgentRef, ...] = ()
    originated_by: Tuple[AgentRef, ...] = ()
    support_level: Optional[str] = None
    standard_name: Optional[str] = None
    comment: Optional[str] = None
    description: Optional[str] = None


class AIPackage(Node):
    type_tag: ClassVar[str] = "ai_AIPackage"
    profile: ClassVar[str] = "ai"

    core: PackageCore = Field(default_factory=PackageCore)
    autonomy_type: Optional[Presence] = None
    domain: Optional[str] = None
    energy_consumption: Optional[EnergyConsumption] = None
    hyperparameter: Tuple[DictionaryEntry, ...] = ()
    information_about_training: Optional[str] = None
    information_about_application: Optional[str] = None
    limitation: Optional[str] = None
    metric: Tuple[DictionaryEntry, ...] = ()
    metric_decision_threshold: Tuple[DictionaryEntry, ...] = ()
    model_data_preprocessing: Tuple[str, ...] = ()
    model_explainability: Tuple[str, ...] = ()
    safety_risk_assessment: Optional[SafetyRiskAssessment] = None
    standard_compliance: Tuple[str, ...] = ()
    type_of_model: Tuple[str, ...] = ()
    use_sensitive_personal_information: Optional[Presence] = None

    @property
    def element_id(self) -> Optional[str]:
        return self.core.spdx_id


class DatasetPackage(Node):
    type_tag: ClassVar[str] = "dataset_DatasetPackage"
    profile: ClassVar[str] = "dataset"

    core: PackageCore = Field(default_factory=PackageCore)
    dataset_type: Tuple[DatasetType, ...] = ()
    anonymization_method_used: Optional[str] = None
    confidentiality_level: Optional[ConfidentialityLevel] = None
    data_collection_process: Optional[str] = None
    data_preprocessing: Optional[str] = None
    dataset_availability: Optional[DatasetAvailability] = None
    dataset_noise: Optional[str] = None
    dataset_size: Optional[int] = Field(default=None, ge=0)
    dataset_update_mechanism: Optional[str] = None
    has_sensitive_personal_information: Optional[Presence] = None
    intended_use: Optional[str] = None
    known_bias: Optional[str] = None
    sensor: Tuple[DictionaryEntry, ...] = ()

    @property
    def element_id(self) -> Optional[str]:
        return self.core.spdx_id


class FileArtifact(Node):
    type_tag: ClassVar[str] = "software_File"

    spdx_id: Optional[str] = None
    name: Optional[str] = None
    content_type: Optional[str] = None
    primary_purpose: Optional[SoftwarePurpose] = None

    @property
    def element_id(self) -> Optional[str]:
        return self.spdx_id


class LicenseElement(Node):
    """A license graph node: listed license, NONE, NOASSERTION or expression."""

    type_tag: str
    spdx_id: Optional[str] = None
    license_expression: Optional[str] = None

    @property
    def element_id(self) -> Optional[str]:
        return self.spdx_id

    @property
    def target(self) -> LicenseTarget:
        if self.type_tag == "expandedlicensing_NoneLicense":
            return LicenseTarget(kind=LicenseTargetKind.NONE, value=self.spdx_id or "NONE")
        if self.type_tag == "expandedlicensing_NoAssertionLicense":
            return LicenseTarget(kind=LicenseTargetKind.NO_ASSERTION, value=self.spdx_id or "NOASSERTION")
        if self.license_expression:
            return LicenseTarget(kind=LicenseTargetKind.EXPRESSION, value=self.license_expression)
        return classify_license_target(self.spdx_id or "")


LICENSE_TYPE_TAGS = frozenset({
    "simplelicensing_LicenseExpression",
    "expandedlicensing_ListedLicense",
    "expandedlicensing_NoneLicense",
    "expandedlicensing_NoAssertionLicense",
})


# Element types carried opaquely without an "unknown type" note.
OPAQUE_ELEMENT_TYPES = frozenset({
    "software_Package",
    "software_Snippet",
    "software_Sbom",
    "Bom",
    "Bundle",
    "Annotation",
    "ExternalMap",
    "build_Build",
})


class GenericElement(Node):
    """Element of a type this library does not model; all properties are opaque."""

    type_tag: str
    spdx_id: Optional[str] = None

    @property
    def element_id(self) -> Optional[str]:
        return self.spdx_id


class Relationship(Node):
    type_tag: ClassVar[str] = "Relationship"

    spdx_id: Optional[str] = None
    relationship_type: Optional[RelationshipType] = None
    from_id: Optional[str] = None
    to: Tuple[str, ...] = ()
    description: Optional[str] = None

    @property
    def is_license(self) -> bool:
        return self.relationship_type in LICENSE_RELATIONSHIPS

    @property
    def license_targets(self) -> Tuple[LicenseTarget, ...]:
        return tuple(classify_license_target(target) for target in self.to)


Element = Union[AIPackage, DatasetPackage, FileArtifact, Agent, LicenseElement, GenericElement]
Package = Union[AIPackage, DatasetPackage]


def element_kind(element: Any) -> str:
    """Short human name of an element's class."""
    if isinstance(element, Agent):
        return element.type_tag
    if isinstance(element, FileArtifact):
        return "File"
    if isinstance(element, AIPackage):
        return "AIPackage"
    if isinstance(element, DatasetPackage):
        return "DatasetPackage"
    if isinstance(element, Relationship):
        return "Relationship"
    return element.type_tag


def element_name(element: Any) -> Optional[str]:
    if isinstance(element, (AIPackage, DatasetPackage)):
        return element.core.name
    return getattr(element, "name", None) or getattr(element, "license_expression", None)


def is_empty(value: Any) -> bool:
    """Absent, blank text and empty lists all count as missing."""
    if value is None:
        return True
    if isinstance(value, str):
        return not value.strip()
    if isinstance(value, (tuple, list, dict)):
        return len(value) == 0
    return False


# =============================================================================
# Property tables
# =============================================================================


class ValueKind(str, Enum):
    TEXT = "text"
    ENUM = "enum"
    TIMESTAMP = "timestamp"
    IRI = "iri"
    AGENT = "agent"
    DICTIONARY = "dictionary"
    INTEGER = "integer"
    DECIMAL = "decimal"
    ENERGY = "energy"
    ENERGY_DESCRIPTION = "energyDescription"


@dataclass(frozen=True)
class PropertySpec:
    """How one JSON property maps onto a model attribute."""

    json_name: str
    attr: str
    kind: ValueKind
    profile: str
    multi: bool = False
    enum: Optional[Type[Enum]] = None
    aliases: Tuple[str, ...] = ()
    on_core: bool = False

    @property
    def local_name(self) -> str:
        return local_name(self.json_name)

    @property
    def cardinality(self) -> str:
        return "0..*" if self.multi else "0..1"


CORE_PACKAGE_PROPERTIES: Tuple[PropertySpec, ...] = (
    PropertySpec("name", "name", ValueKind.TEXT, "core", on_core=True),
    PropertySpec("packageVersion", "package_version", ValueKind.TEXT, "software",
                 aliases=("software_packageVersion",), on_core=True),
    PropertySpec("buildTime", "build_time", ValueKind.TIMESTAMP, "core",
                 aliases=("builtTime",), on_core=True),
    PropertySpec("releaseTime", "release_time", ValueKind.TIMESTAMP, "core", on_core=True),
    PropertySpec("validUntilTime", "valid_until_time", ValueKind.TIMESTAMP, "core", on_core=True),
    PropertySpec("downloadLocation", "download_location", ValueKind.IRI, "software", multi=True,
                 aliases=("software_downloadLocation",), on_core=True),
    PropertySpec("primaryPurpose", "primary_purpose", ValueKind.ENUM, "software", enum=SoftwarePurpose,
                 aliases=("software_primaryPurpose",), on_core=True),
    PropertySpec("suppliedBy", "supplied_by", ValueKind.AGENT, "core", multi=True, on_core=True),
    PropertySpec("originatedBy", "originated_by", ValueKind.AGENT, "core", multi=True, on_core=True),
    PropertySpec("supportLevel", "support_level", ValueKind.TEXT, "core", on_core=True),
    PropertySpec("standardName", "standard_name", ValueKind.TEXT, "core", on_core=True),
    PropertySpec("comment", "comment", ValueKind.TEXT, "core", on_core=True),
    PropertySpec("description", "description", ValueKind.TEXT, "core", on_core=True),
)

AI_PACKAGE_PROPERTIES: Tuple[PropertySpec, ...] = (
    PropertySpec("ai_autonomyType", "autonomy_type", ValueKind.ENUM, "ai", enum=Presence),
    PropertySpec("ai_domain", "domain", ValueKind.TEXT, "ai"),
    PropertySpec("ai_energyConsumption", "energy_consumption", ValueKind.ENERGY, "ai"),
    PropertySpec("ai_hyperparameter", "hyperparameter", ValueKind.DICTIONARY, "ai", multi=True),
    PropertySpec("ai_informationAboutApplication", "information_about_application", ValueKind.TEXT, "ai"),
    PropertySpec("ai_informationAboutTraining", "information_about_training", ValueKind.TEXT, "ai"),
    PropertySpec("ai_limitation", "limitation", ValueKind.TEXT, "ai"),
    PropertySpec("ai_metric", "metric", ValueKind.DICTIONARY, "ai", multi=True),
    PropertySpec("ai_metricDecisionThreshold", "metric_decision_threshold", ValueKind.DICTIONARY, "ai", multi=True),
    PropertySpec("ai_modelDataPreprocessing", "model_data_preprocessing", ValueKind.TEXT, "ai", multi=True),
    PropertySpec("ai_modelExplainability", "model_explainability", ValueKind.TEXT, "ai", multi=True),
    PropertySpec("ai_safetyRiskAssessment", "safety_risk_assessment", ValueKind.ENUM, "ai",
                 enum=SafetyRiskAssessment),
    PropertySpec("ai_standardCompliance", "standard_compliance", ValueKind.TEXT, "ai", multi=True),
    PropertySpec("ai_typeOfModel", "type_of_model", ValueKind.TEXT, "ai", multi=True),
    PropertySpec("ai_useSensitivePersonalInformation", "use_sensitive_personal_information",
                 ValueKind.ENUM, "ai", enum=Presence),
)

DATASET_PACKAGE_PROPERTIES: Tuple[PropertySpec, ...] = (
    PropertySpec("dataset_anonymizationMethodUsed", "anonymization_method_used", ValueKind.TEXT, "dataset"),
    PropertySpec("dataset_confidentialityLevel", "confidentiality_level", ValueKind.ENUM, "dataset",
                 enum=ConfidentialityLevel),
    PropertySpec("dataset_dataCollectionProcess", "data_collection_process", ValueKind.TEXT, "dataset"),
    PropertySpec("dataset_dataPreprocessing", "data_preprocessing", ValueKind.TEXT, "dataset"),
    PropertySpec("dataset_datasetAvailability", "dataset_availability", ValueKind.ENUM, "dataset",
                 enum=DatasetAvailability),
    PropertySpec("dataset_datasetNoise", "dataset_noise", ValueKind.TEXT, "dataset"),
    PropertySpec("dataset_datasetSize", "dataset_size", ValueKind.INTEGER, "dataset"),
    PropertySpec("dataset_datasetType", "dataset_type", ValueKind.ENUM, "dataset", multi=True,
                 enum=DatasetType),
    PropertySpec("dataset_datasetUpdateMechanism", "dataset_update_mechanism", ValueKind.TEXT, "dataset"),
    PropertySpec("dataset_hasSensitivePersonalInformation", "has_sensitive_personal_information",
                 ValueKind.ENUM, "dataset", enum=Presence),
    PropertySpec("dataset_intendedUse", "intended_use", ValueKind.TEXT, "dataset"),
    PropertySpec("dataset_knownBias", "known_bias", ValueKind.TEXT, "dataset"),
    PropertySpec("dataset_sensor", "sensor", ValueKind.DICTIONARY, "dataset", multi=True),
)

ENERGY_CONSUMPTION_PROPERTIES: Tuple[PropertySpec, ...] = (
    PropertySpec("ai_finetuningEnergyConsumption", "finetuning", ValueKind.ENERGY_DESCRIPTION, "ai", multi=True),
    PropertySpec("ai_inferenceEnergyConsumption", "inference", ValueKind.ENERGY_DESCRIPTION, "ai", multi=True),
    PropertySpec("ai_trainingEnergyConsumption", "training", ValueKind.ENERGY_DESCRIPTION, "ai", multi=True),
)

ENERGY_DESCRIPTION_PROPERTIES: Tuple[PropertySpec, ...] = (
    PropertySpec("ai_energyQuantity", "energy_quantity", ValueKind.DECIMAL, "ai"),
    PropertySpec("ai_energyUnit", "energy_unit", ValueKind.ENUM, "ai", enum=EnergyUnit),
    PropertySpec("comment", "comment", ValueKind.TEXT, "core"),
)

FILE_PROPERTIES: Tuple[PropertySpec, ...] = (
    PropertySpec("name", "name", ValueKind.TEXT, "core"),
    PropertySpec("contentType", "content_type", ValueKind.TEXT, "core", aliases=("software_contentType",)),
    PropertySpec("primaryPurpose", "primary_purpose", ValueKind.ENUM, "software", enum=SoftwarePurpose,
                 aliases=("software_primaryPurpose",)),
)

PACKAGE_PROPERTIES: Dict[type, Tuple[PropertySpec, ...]] = {
    AIPackage: CORE_PACKAGE_PROPERTIES + AI_PACKAGE_PROPERTIES,
    DatasetPackage: CORE_PACKAGE_PROPERTIES + DATASET_PACKAGE_PROPERTIES,
}

# Properties that are understood but carried opaquely: never reported as unknown.
PASSTHROUGH_PROPERTIES: FrozenSet[str] = frozenset({
    "creationInfo",
    "externalIdentifier",
    "externalRef",
    "packageUrl",
    "software_packageUrl",
    "verifiedUsing",
    "summary",
    "homePage",
    "software_homePage",
    "software_copyrightText",
    "software_sourceInfo",
    "impactStatement",
    "security_impactStatement",
    "locator",
    "specVersion",
    "dataLicense",
})

PROFILE_PREFIXES: Tuple[str, ...] = (
    "ai_", "dataset_", "software_", "security_", "simplelicensing_",
    "expandedlicensing_", "build_", "core_",
)


def local_name(json_name: str) -> str:
    """Property name without its profile prefix (ai_metric -> metric)."""
    for prefix in PROFILE_PREFIXES:
        if json_name.startswith(prefix):
            return json_name[len(prefix):]
    return json_name


def property_spec(element_cls: type, name: str) -> Optional[PropertySpec]:
    """Look up a package property by JSON name, alias or local name."""
    for spec in PACKAGE_PROPERTIES.get(element_cls, ()):
        if name == spec.json_name or name in spec.aliases or name == spec.local_name:
            return spec
    return None


def property_value(element: Any, spec: PropertySpec) -> Any:
    """Read the attribute behind a property spec, looking inside core when needed."""
    owner = element.core if spec.on_core else element
    return getattr(owner, spec.attr)


def known_field_names() -> FrozenSet[str]:
    """Every local field name the model houses, typed or pass-through."""
    names = {"spdxId", "created", "createdBy", "to", "from", "relationshipType"}
    for table in (CORE_PACKAGE_PROPERTIES, AI_PACKAGE_PROPERTIES, DATASET_PACKAGE_PROPERTIES,
                  ENERGY_CONSUMPTION_PROPERTIES, ENERGY_DESCRIPTION_PROPERTIES, FILE_PROPERTIES):
        names.update(spec.local_name for spec in table)
    names.update(local_name(name) for name in PASSTHROUGH_PROPERTIES)
    return frozenset(names)
