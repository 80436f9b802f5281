"""
Reader and canonical writer for SPDX 3.0 JSON-LD documents.

This module handles:
- Decoding UTF-8 JSON into RawNode objects and then into the typed model
- Lenient conversion: bad values are kept verbatim as rejected values
- Deterministic output ("type", "spdxId", then keys in alphabetical order)
- File reading with the configured size limit and extension check

Accepted inputs are the full envelope {"@context": ..., "@graph": [...]}, a
bare array of nodes, or a single node object.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .config import config
from .document import SpdxDocument, ValueNode
from .errors import (
    BadIri,
    BadTimestamp,
    DocumentSyntaxError,
    DocumentTooLarge,
    DuplicateId,
    MissingType,
    UnknownToken,
)
from .model import (
    AGENT_KINDS_BY_TAG,
    ENERGY_CONSUMPTION_PROPERTIES,
    ENERGY_DESCRIPTION_PROPERTIES,
    FILE_PROPERTIES,
    LICENSE_TYPE_TAGS,
    OPAQUE_ELEMENT_TYPES,
    PACKAGE_PROPERTIES,
    AIPackage,
    Agent,
    CreationInfo,
    DatasetPackage,
    DictionaryEntry,
    EnergyConsumption,
    EnergyConsumptionDescription,
    FileArtifact,
    GenericElement,
    LicenseElement,
    Node,
    PackageCore,
    Problem,
    PropertySpec,
    RejectedValue,
    Relationship,
    RelationshipType,
    Timestamp,
    ValueKind,
    format_timestamp,
    is_non_negative_decimal,
    parse_enum,
    parse_timestamp,
    validate_iri,
)
from .validator import unknown_content_diagnostics

logger = logging.getLogger(__name__)

DOCUMENT_TYPE = "SpdxDocument"
CREATION_INFO_TYPE = "CreationInfo"
DICTIONARY_ENTRY_TYPE = "DictionaryEntry"
ENERGY_CONSUMPTION_TYPE = "ai_EnergyConsumption"
ENERGY_DESCRIPTION_TYPE = "ai_EnergyConsumptionDescription"
FILE_TYPES = ("software_File", "File")
ROOT_ELEMENT_KEYS = ("rootElement", "rootElements")


@dataclass
class RawNode:
    """A JSON object with its "type" discriminator split off."""

    type_tag: str
    properties: Dict[str, Any] = field(default_factory=dict)
    location: str = "$"

    @classmethod
    def from_json(cls, obj: Any, location: str) -> "RawNode":
        if not isinstance(obj, dict):
            raise DocumentSyntaxError(f"Expected an object at {location}")
        type_tag = obj.get("type")
        if not isinstance(type_tag, str) or not type_tag:
            raise MissingType(location)
        properties = {key: value for key, value in obj.items() if key != "type"}
        return cls(type_tag=type_tag, properties=properties, location=location)


class _Rejection(Exception):
    """Internal signal: a value failed conversion."""

    def __init__(self, problem: Problem, detail: str):
        self.problem = problem
        self.detail = detail
        super().__init__(detail)


# =============================================================================
# Reading
# =============================================================================


def decode_json(data: Union[bytes, str]) -> Any:
    """
    Decode UTF-8 JSON text. Non-integer numbers are read as Decimal so their
    lexical form survives.

    Raises:
        DocumentSyntaxError: For invalid UTF-8, malformed JSON or nesting
            deeper than the interpreter can decode
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DocumentSyntaxError(f"Input is not valid UTF-8: {e.reason}")
        if data.startswith("\ufeff"):
            data = data[1:]
    try:
        return json.loads(data, parse_float=Decimal)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno)
    except RecursionError:
        raise DocumentSyntaxError("Input is nested too deeply")


def read_document(data: Union[bytes, str]):
    """
    Parse a serialized document into the model.

    Args:
        data: UTF-8 JSON text

    Returns:
        Tuple of (SpdxDocument, list of informational Diagnostic) where the
        diagnostics note unknown element types and unknown properties

    Raises:
        DocumentSyntaxError: Malformed text
        MissingType: An object node without "type"
        DuplicateId: Two elements share an spdxId
    """
    parsed = decode_json(data)
    document = _DocumentReader().read(parsed)
    diagnostics = unknown_content_diagnostics(document)

    logger.debug(
        f"Read document with {len(document.elements)} elements and "
        f"{len(document.relationships)} relationships"
    )
    return document, diagnostics


def read_document_file(path: Union[str, Path]):
    """
    Read a document from disk.

    Args:
        path: File to read

    Returns:
        Same as read_document

    Raises:
        FileNotFoundError / OSError: When the file cannot be read
        DocumentTooLarge: When the file exceeds AIBOMKIT_MAX_FILE_SIZE_MB
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"No such file: {path}")

    extension = path.suffix.lower().lstrip(".")
    if extension not in config.allowed_extensions:
        logger.warning(f"Unexpected file extension '.{extension}' for {path.name}, reading anyway")

    limit = config.max_file_size_bytes()
    size = path.stat().st_size
    if limit is not None and size > limit:
        raise DocumentTooLarge(f"{path} is {size} bytes, limit is {limit} bytes")

    logger.info(f"Reading {path} ({size} bytes)")
    return read_document(path.read_bytes())


class _DocumentReader:
    """Builds one SpdxDocument from decoded JSON."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.elements: Dict[str, Any] = {}
        self.relationships: List[Relationship] = []
        self.value_nodes: List[ValueNode] = []
        self.anonymous = 0
        self.document_node: Optional[RawNode] = None
        self.shared_creation_info: Dict[str, CreationInfo] = {}
        self.creation_info: Optional[CreationInfo] = None
        self.consumed_info_ids = set()

    def read(self, parsed: Any) -> SpdxDocument:
        nodes = self._graph_nodes(parsed)

        # First pass: the document node and shared CreationInfo nodes may
        # appear anywhere in the graph.
        for node in nodes:
            if node.type_tag == DOCUMENT_TYPE and self.document_node is None:
                self.document_node = node
            elif node.type_tag == CREATION_INFO_TYPE and isinstance(node.properties.get("@id"), str):
                info = self._creation_info(node.properties, node.location)
                self.shared_creation_info.setdefault(info.node_id, info)
        self.creation_info = self._document_creation_info()

        for node in nodes:
            self._dispatch(node)

        return self._assemble()

    def _graph_nodes(self, parsed: Any) -> List[RawNode]:
        if isinstance(parsed, list):
            return [RawNode.from_json(obj, f"[{i}]") for i, obj in enumerate(parsed)]
        if isinstance(parsed, dict):
            if "@graph" in parsed:
                graph = parsed["@graph"]
                if not isinstance(graph, list):
                    raise DocumentSyntaxError("@graph must be an array")
                return [RawNode.from_json(obj, f"@graph[{i}]") for i, obj in enumerate(graph)]
            return [RawNode.from_json(parsed, "$")]
        raise DocumentSyntaxError("Top-level value must be an object or an array")

    def _dispatch(self, node: RawNode):
        tag = node.type_tag
        if tag == DOCUMENT_TYPE:
            if node is not self.document_node:
                self.logger.warning(f"Ignoring second SpdxDocument node at {node.location}")
            return
        if tag == CREATION_INFO_TYPE:
            node_id = node.properties.get("@id")
            if not isinstance(node_id, str) or node_id in self.consumed_info_ids:
                self.value_nodes.append(self._creation_info(node.properties, node.location))
                return
            self.consumed_info_ids.add(node_id)
            info = self.shared_creation_info[node_id]
            if info is not self.creation_info:
                self.value_nodes.append(info)
            return
        if tag == "Relationship":
            self.relationships.append(self._relationship(node))
            return
        if tag == ENERGY_CONSUMPTION_TYPE:
            self.value_nodes.append(self._energy_consumption(node.properties, node.location))
            return
        if tag == ENERGY_DESCRIPTION_TYPE:
            self.value_nodes.append(self._energy_description(node.properties, node.location))
            return
        if tag == DICTIONARY_ENTRY_TYPE:
            self.value_nodes.append(self._dictionary_entry(node.properties))
            return

        self._add(self._element(node))

    def _document_creation_info(self) -> Optional[CreationInfo]:
        """The CreationInfo the document points at, or the first shared one."""
        if self.document_node is not None:
            ref = self.document_node.properties.get("creationInfo")
            if isinstance(ref, str) and ref in self.shared_creation_info:
                return self.shared_creation_info[ref]
            if ref is not None:
                return None
        return next(iter(self.shared_creation_info.values()), None)

    def _add(self, element):
        key = element.element_id
        if key is None:
            self.anonymous += 1
            key = f"_:element-{self.anonymous}"
        elif key in self.elements:
            raise DuplicateId(key)
        self.elements[key] = element

    def _assemble(self) -> SpdxDocument:
        fields: Dict[str, Any] = {
            "elements": self.elements,
            "relationships": tuple(self.relationships),
            "value_nodes": tuple(self.value_nodes),
        }

        creation_info = self.creation_info
        node = self.document_node
        if node is None:
            fields["creation_info"] = creation_info
            return SpdxDocument(**fields)

        extras: Dict[str, Any] = {}
        roots = _merged_roots(node.properties)
        if roots is not None:
            fields["root_elements"] = roots
        for key, value in node.properties.items():
            if key == "spdxId" and isinstance(value, str):
                fields["spdx_id"] = value
            elif key == "name" and isinstance(value, str):
                fields["name"] = value
            elif key == "creationInfo" and isinstance(value, dict):
                creation_info = self._creation_info(
                    _typed(value, CREATION_INFO_TYPE, f"{node.location}.creationInfo"),
                    f"{node.location}.creationInfo",
                )
            elif key == "creationInfo" and isinstance(value, str) and value in self.shared_creation_info:
                pass
            elif key == "profileConformance" and _is_text_or_text_list(value):
                fields["profile_conformance"] = _as_tuple(value)
            elif key in ROOT_ELEMENT_KEYS and roots is not None:
                pass
            else:
                extras[key] = value

        fields["creation_info"] = creation_info
        fields["extras"] = extras
        return SpdxDocument(**fields)

    # Elements

    def _element(self, node: RawNode):
        tag = node.type_tag
        if tag == AIPackage.type_tag:
            return self._package(AIPackage, node)
        if tag == DatasetPackage.type_tag:
            return self._package(DatasetPackage, node)
        if tag in FILE_TYPES:
            return self._file(node)
        if tag in AGENT_KINDS_BY_TAG:
            return self._agent(node.properties, tag, node.location)
        if tag in LICENSE_TYPE_TAGS:
            return self._license(node)
        return self._generic(node)

    def _package(self, cls, node: RawNode):
        specs = PACKAGE_PROPERTIES[cls]
        core_values: Dict[str, Any] = {}
        values: Dict[str, Any] = {}
        extras: Dict[str, Any] = {}
        rejected: List[RejectedValue] = []
        claimed = _claimed_keys(specs, node.properties)

        for key, raw in node.properties.items():
            if key == "spdxId":
                self._convert_id(key, raw, core_values, rejected)
                continue

            spec = _match_spec(specs, key)
            if spec is None:
                extras[key] = raw
                continue
            if claimed[spec.attr] != key:
                rejected.append(_duplicate(key, raw, claimed[spec.attr]))
                continue

            target = core_values if spec.on_core else values
            self._convert_into(spec, key, raw, f"{node.location}.{key}", target, rejected)

        return cls(core=PackageCore(**core_values), extras=extras, rejected=tuple(rejected), **values)

    def _file(self, node: RawNode) -> FileArtifact:
        return self._simple_node(FileArtifact, FILE_PROPERTIES, node.properties, node.location)

    def _simple_node(self, cls, specs, properties: Dict[str, Any], location: str, **fixed):
        values: Dict[str, Any] = dict(fixed)
        extras: Dict[str, Any] = {}
        rejected: List[RejectedValue] = []
        claimed = _claimed_keys(specs, properties)

        for key, raw in properties.items():
            if key == "spdxId" and "spdx_id" in cls.model_fields:
                self._convert_id(key, raw, values, rejected)
                continue
            spec = _match_spec(specs, key)
            if spec is None:
                extras[key] = raw
                continue
            if claimed[spec.attr] != key:
                rejected.append(_duplicate(key, raw, claimed[spec.attr]))
                continue
            self._convert_into(spec, key, raw, f"{location}.{key}", values, rejected)

        return cls(extras=extras, rejected=tuple(rejected), **values)

    def _agent(self, properties: Dict[str, Any], tag: str, location: str) -> Agent:
        values: Dict[str, Any] = {"kind": AGENT_KINDS_BY_TAG[tag]}
        extras: Dict[str, Any] = {}
        rejected: List[RejectedValue] = []

        for key, raw in properties.items():
            if key == "spdxId":
                self._convert_id(key, raw, values, rejected)
            elif key == "name" and isinstance(raw, str):
                values["name"] = raw
            elif key == "name":
                rejected.append(RejectedValue(property=key, value=raw, problem=Problem.SHAPE,
                                              detail="expected text"))
            elif key == "externalIdentifier":
                values["external_identifiers"] = _as_tuple(raw)
            else:
                extras[key] = raw

        return Agent(extras=extras, rejected=tuple(rejected), **values)

    def _license(self, node: RawNode) -> LicenseElement:
        values: Dict[str, Any] = {"type_tag": node.type_tag}
        extras: Dict[str, Any] = {}
        for key, raw in node.properties.items():
            if key == "spdxId" and isinstance(raw, str):
                values["spdx_id"] = raw
            elif key == "simplelicensing_licenseExpression" and isinstance(raw, str):
                values["license_expression"] = raw
            else:
                extras[key] = raw
        return LicenseElement(extras=extras, **values)

    def _generic(self, node: RawNode) -> GenericElement:
        spdx_id = node.properties.get("spdxId")
        if not isinstance(spdx_id, str):
            spdx_id = None
        extras = {key: raw for key, raw in node.properties.items() if not (key == "spdxId" and spdx_id)}
        if node.type_tag not in OPAQUE_ELEMENT_TYPES:
            self.logger.info(f"Carrying element of unknown type '{node.type_tag}' opaquely")
        return GenericElement(type_tag=node.type_tag, spdx_id=spdx_id, extras=extras)

    def _relationship(self, node: RawNode) -> Relationship:
        values: Dict[str, Any] = {}
        extras: Dict[str, Any] = {}
        rejected: List[RejectedValue] = []

        for key, raw in node.properties.items():
            try:
                if key == "spdxId":
                    self._convert_id(key, raw, values, rejected)
                elif key == "relationshipType":
                    values["relationship_type"] = _convert_enum(raw, RelationshipType)
                elif key == "from":
                    values["from_id"] = _single(raw, _convert_text)
                elif key == "to":
                    items = _as_tuple(raw)
                    values["to"] = tuple(_convert_text(item) for item in items)
                elif key == "description":
                    values["description"] = _convert_text(raw)
                else:
                    extras[key] = raw
            except _Rejection as e:
                rejected.append(RejectedValue(property=key, value=raw, problem=e.problem, detail=e.detail))

        return Relationship(extras=extras, rejected=tuple(rejected), **values)

    # Value nodes

    def _creation_info(self, properties: Dict[str, Any], location: str) -> CreationInfo:
        values: Dict[str, Any] = {}
        extras: Dict[str, Any] = {}
        rejected: List[RejectedValue] = []

        for key, raw in properties.items():
            try:
                if key == "@id" and isinstance(raw, str):
                    values["node_id"] = raw
                elif key == "created":
                    values["created"] = _single(raw, _convert_timestamp)
                elif key == "createdBy":
                    values["created_by"] = tuple(
                        self._agent_ref(item, f"{location}.createdBy[{i}]")
                        for i, item in enumerate(_as_tuple(raw))
                    )
                else:
                    extras[key] = raw
            except _Rejection as e:
                rejected.append(RejectedValue(property=key, value=raw, problem=e.problem, detail=e.detail))

        return CreationInfo(extras=extras, rejected=tuple(rejected), **values)

    def _dictionary_entry(self, properties: Dict[str, Any]) -> DictionaryEntry:
        values: Dict[str, Any] = {}
        extras: Dict[str, Any] = {}
        rejected: List[RejectedValue] = []

        for key, raw in properties.items():
            if key in ("key", "value"):
                if isinstance(raw, str):
                    values[key] = raw
                else:
                    rejected.append(RejectedValue(property=key, value=raw, problem=Problem.SHAPE,
                                                  detail="expected text"))
            else:
                extras[key] = raw

        return DictionaryEntry(extras=extras, rejected=tuple(rejected), **values)

    def _energy_consumption(self, properties: Dict[str, Any], location: str) -> EnergyConsumption:
        return self._simple_node(EnergyConsumption, ENERGY_CONSUMPTION_PROPERTIES, properties, location)

    def _energy_description(self, properties: Dict[str, Any], location: str) -> EnergyConsumptionDescription:
        return self._simple_node(EnergyConsumptionDescription, ENERGY_DESCRIPTION_PROPERTIES, properties, location)

    def _agent_ref(self, raw: Any, location: str):
        if isinstance(raw, str):
            return raw
        if isinstance(raw, dict):
            node = RawNode.from_json(raw, location)
            if node.type_tag not in AGENT_KINDS_BY_TAG:
                raise _Rejection(Problem.SHAPE, f"'{node.type_tag}' is not an agent type")
            return self._agent(node.properties, node.type_tag, location)
        raise _Rejection(Problem.SHAPE, "expected an agent object or reference")

    # Conversion

    def _convert_id(self, key: str, raw: Any, target: Dict[str, Any], rejected: List[RejectedValue]):
        if isinstance(raw, str):
            target["spdx_id"] = raw
        else:
            rejected.append(RejectedValue(property=key, value=raw, problem=Problem.SHAPE,
                                          detail="spdxId must be text"))

    def _convert_into(self, spec: PropertySpec, key: str, raw: Any, location: str,
                      target: Dict[str, Any], rejected: List[RejectedValue]):
        try:
            if spec.multi:
                target[spec.attr] = tuple(
                    self._convert_value(spec, item, f"{location}[{i}]")
                    for i, item in enumerate(_as_tuple(raw))
                )
            else:
                target[spec.attr] = _single(raw, lambda item: self._convert_value(spec, item, location))
        except _Rejection as e:
            rejected.append(RejectedValue(property=key, value=raw, problem=e.problem, detail=e.detail))

    def _convert_value(self, spec: PropertySpec, raw: Any, location: str) -> Any:
        kind = spec.kind
        if kind == ValueKind.TEXT:
            return _convert_text(raw)
        if kind == ValueKind.ENUM:
            return _convert_enum(raw, spec.enum)
        if kind == ValueKind.TIMESTAMP:
            return _convert_timestamp(raw)
        if kind == ValueKind.IRI:
            try:
                return validate_iri(raw)
            except BadIri as e:
                raise _Rejection(Problem.IRI, e.reason)
        if kind == ValueKind.INTEGER:
            if isinstance(raw, bool) or not isinstance(raw, int):
                raise _Rejection(Problem.INTEGER, "expected an integer number of bytes")
            if raw < 0:
                raise _Rejection(Problem.INTEGER, "must not be negative")
            return raw
        if kind == ValueKind.DECIMAL:
            return _convert_decimal(raw)
        if kind == ValueKind.AGENT:
            return self._agent_ref(raw, location)
        if kind == ValueKind.DICTIONARY:
            return self._dictionary_entry(_typed_or_reject(raw, DICTIONARY_ENTRY_TYPE, location))
        if kind == ValueKind.ENERGY:
            return self._energy_consumption(_typed_or_reject(raw, ENERGY_CONSUMPTION_TYPE, location), location)
        if kind == ValueKind.ENERGY_DESCRIPTION:
            return self._energy_description(_typed_or_reject(raw, ENERGY_DESCRIPTION_TYPE, location), location)
        raise _Rejection(Problem.SHAPE, f"unsupported value kind {kind}")


def _match_spec(specs, key: str) -> Optional[PropertySpec]:
    for spec in specs:
        if key == spec.json_name or key in spec.aliases:
            return spec
    return None


def _merged_roots(properties: Dict[str, Any]) -> Optional[Tuple[str, ...]]:
    """
    Root element ids from rootElement and rootElements together, in that
    order and without repeats. None when either key holds something other
    than text, so both are carried opaquely.
    """
    present = [properties[key] for key in ROOT_ELEMENT_KEYS if key in properties]
    if not present or not all(_is_text_or_text_list(value) for value in present):
        return None
    return tuple(dict.fromkeys(item for value in present for item in _as_tuple(value)))


def _claimed_keys(specs, properties: Dict[str, Any]) -> Dict[str, str]:
    """Key each property is read from: its canonical name if present, else its first alias present."""
    claimed: Dict[str, str] = {}
    for spec in specs:
        for name in (spec.json_name, *spec.aliases):
            if name in properties:
                claimed[spec.attr] = name
                break
    return claimed


def _duplicate(key: str, raw: Any, claimed_key: str) -> RejectedValue:
    return RejectedValue(property=key, value=raw, problem=Problem.CARDINALITY,
                         detail=f"same property as {claimed_key}")


def _as_tuple(raw: Any) -> Tuple[Any, ...]:
    if isinstance(raw, list):
        return tuple(raw)
    return (raw,)


def _is_text_or_text_list(raw: Any) -> bool:
    return all(isinstance(item, str) for item in _as_tuple(raw))


def _single(raw: Any, convert):
    """Convert a 0..1 value; a one-element array is unwrapped."""
    if isinstance(raw, list):
        if not raw:
            return None
        if len(raw) > 1:
            raise _Rejection(Problem.CARDINALITY, f"at most one value allowed, found {len(raw)}")
        raw = raw[0]
    return convert(raw)


def _convert_text(raw: Any) -> str:
    if not isinstance(raw, str):
        raise _Rejection(Problem.SHAPE, "expected text")
    return raw


def _convert_enum(raw: Any, enum_cls):
    try:
        return parse_enum(raw, enum_cls)
    except UnknownToken as e:
        raise _Rejection(Problem.ENUM, str(e))


def _convert_timestamp(raw: Any) -> Timestamp:
    try:
        return parse_timestamp(raw)
    except BadTimestamp as e:
        raise _Rejection(Problem.TIMESTAMP, e.reason)


def _convert_decimal(raw: Any) -> str:
    if isinstance(raw, bool):
        raise _Rejection(Problem.DECIMAL, "expected a decimal number")
    if isinstance(raw, Decimal) and raw.is_finite():
        text = format(raw, "f")
    elif isinstance(raw, (int, float, Decimal)):
        text = str(raw)
    elif isinstance(raw, str):
        text = raw
    else:
        raise _Rejection(Problem.DECIMAL, "expected a decimal number")
    if not is_non_negative_decimal(text):
        raise _Rejection(Problem.DECIMAL, f"'{text}' is not a non-negative decimal")
    return text


def _typed(raw: Dict[str, Any], expected: str, location: str) -> Dict[str, Any]:
    node = RawNode.from_json(raw, location)
    if node.type_tag != expected:
        raise DocumentSyntaxError(f"Expected {expected} at {location}, found {node.type_tag}")
    return node.properties


def _typed_or_reject(raw: Any, expected: str, location: str) -> Dict[str, Any]:
    if not isinstance(raw, dict):
        raise _Rejection(Problem.SHAPE, f"expected a {expected} object")
    node = RawNode.from_json(raw, location)
    if node.type_tag != expected:
        raise _Rejection(Problem.SHAPE, f"expected {expected}, found {node.type_tag}")
    return node.properties


# =============================================================================
# Writing
# =============================================================================


def write_document(document: SpdxDocument) -> bytes:
    """
    Serialize a document to canonical bytes.

    Graph order: shared CreationInfo, SpdxDocument node, elements, value
    nodes, relationships. Within each object "type" comes first, "spdxId"
    second and the remaining keys follow in alphabetical order.

    Args:
        document: Document to write

    Returns:
        UTF-8 JSON with 2-space indentation and a trailing newline
    """
    graph: List[Dict[str, Any]] = []
    info = document.creation_info

    if info is not None and info.node_id is not None:
        graph.append(creation_info_to_node(info))

    if document.has_document_node():
        graph.append(_document_node(document))

    graph.extend(element_to_node(element) for element in document.elements.values())
    graph.extend(value_node_to_node(node) for node in document.value_nodes)
    graph.extend(relationship_to_node(relationship) for relationship in document.relationships)

    envelope = {"@context": config.context_iri, "@graph": graph}
    text = json.dumps(canonicalize(envelope), indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def canonicalize(value: Any) -> Any:
    """
    Reorder every object's keys into canonical order, recursively.

    Decimal numbers carried in opaque values become plain JSON numbers.
    """
    if isinstance(value, dict):
        ordered: Dict[str, Any] = {}
        for key in ("type", "spdxId"):
            if key in value:
                ordered[key] = canonicalize(value[key])
        for key in sorted(k for k in value if k not in ("type", "spdxId")):
            ordered[key] = canonicalize(value[key])
        return ordered
    if isinstance(value, list):
        return [canonicalize(item) for item in value]
    if isinstance(value, Decimal):
        number = float(value)
        return number if math.isfinite(number) else str(value)
    return value


def _document_node(document: SpdxDocument) -> Dict[str, Any]:
    node: Dict[str, Any] = {"type": DOCUMENT_TYPE}
    if document.spdx_id is not None:
        node["spdxId"] = document.spdx_id
    if document.name is not None:
        node["name"] = document.name
    info = document.creation_info
    if info is not None:
        node["creationInfo"] = info.node_id if info.node_id is not None else creation_info_to_node(info)
    if document.profile_conformance:
        node["profileConformance"] = list(document.profile_conformance)
    if document.root_elements:
        node["rootElement"] = list(document.root_elements)
    for key, value in document.extras.items():
        node.setdefault(key, value)
    return node


def element_to_node(element) -> Dict[str, Any]:
    """Render one element as a JSON object (not yet canonically ordered)."""
    if isinstance(element, (AIPackage, DatasetPackage)):
        node = {"type": element.type_tag}
        if element.core.spdx_id is not None:
            node["spdxId"] = element.core.spdx_id
        for spec in PACKAGE_PROPERTIES[type(element)]:
            owner = element.core if spec.on_core else element
            _emit(node, spec, getattr(owner, spec.attr))
        return _finish(node, element)
    if isinstance(element, FileArtifact):
        node = {"type": element.type_tag}
        if element.spdx_id is not None:
            node["spdxId"] = element.spdx_id
        return _finish(_emit_all(node, FILE_PROPERTIES, element), element)
    if isinstance(element, Agent):
        return agent_to_node(element)
    if isinstance(element, LicenseElement):
        node = {"type": element.type_tag}
        if element.spdx_id is not None:
            node["spdxId"] = element.spdx_id
        if element.license_expression is not None:
            node["simplelicensing_licenseExpression"] = element.license_expression
        return _finish(node, element)
    node = {"type": element.type_tag}
    if element.spdx_id is not None:
        node["spdxId"] = element.spdx_id
    return _finish(node, element)


def agent_to_node(agent: Agent) -> Dict[str, Any]:
    node: Dict[str, Any] = {"type": agent.type_tag}
    if agent.spdx_id is not None:
        node["spdxId"] = agent.spdx_id
    if agent.name is not None:
        node["name"] = agent.name
    if agent.external_identifiers:
        node["externalIdentifier"] = list(agent.external_identifiers)
    return _finish(node, agent)


def creation_info_to_node(info: CreationInfo) -> Dict[str, Any]:
    node: Dict[str, Any] = {"type": CREATION_INFO_TYPE}
    if info.node_id is not None:
        node["@id"] = info.node_id
    if info.created is not None:
        node["created"] = format_timestamp(info.created)
    if info.created_by:
        node["createdBy"] = [_render_agent_ref(ref) for ref in info.created_by]
    return _finish(node, info)


def relationship_to_node(relationship: Relationship) -> Dict[str, Any]:
    node: Dict[str, Any] = {"type": Relationship.type_tag}
    if relationship.spdx_id is not None:
        node["spdxId"] = relationship.spdx_id
    if relationship.relationship_type is not None:
        node["relationshipType"] = relationship.relationship_type.value
    if relationship.from_id is not None:
        node["from"] = relationship.from_id
    if relationship.to:
        node["to"] = list(relationship.to)
    if relationship.description is not None:
        node["description"] = relationship.description
    return _finish(node, relationship)


def value_node_to_node(node: Node) -> Dict[str, Any]:
    if isinstance(node, CreationInfo):
        return creation_info_to_node(node)
    if isinstance(node, EnergyConsumption):
        return _finish(_emit_all({"type": ENERGY_CONSUMPTION_TYPE}, ENERGY_CONSUMPTION_PROPERTIES, node), node)
    if isinstance(node, EnergyConsumptionDescription):
        return _finish(_emit_all({"type": ENERGY_DESCRIPTION_TYPE}, ENERGY_DESCRIPTION_PROPERTIES, node), node)
    return _dictionary_entry_to_node(node)


def _dictionary_entry_to_node(entry: DictionaryEntry) -> Dict[str, Any]:
    node: Dict[str, Any] = {"type": DICTIONARY_ENTRY_TYPE}
    if entry.rejected_property("key") is None:
        node["key"] = entry.key
    if entry.value is not None:
        node["value"] = entry.value
    return _finish(node, entry)


def _emit_all(node: Dict[str, Any], specs, owner) -> Dict[str, Any]:
    for spec in specs:
        _emit(node, spec, getattr(owner, spec.attr))
    return node


def _emit(node: Dict[str, Any], spec: PropertySpec, value: Any):
    if value is None or value == ():
        return
    if spec.multi:
        node[spec.json_name] = [_render(spec, item) for item in value]
    else:
        node[spec.json_name] = _render(spec, value)


def _render(spec: PropertySpec, value: Any) -> Any:
    kind = spec.kind
    if kind == ValueKind.ENUM:
        return value.value
    if kind == ValueKind.TIMESTAMP:
        return format_timestamp(value)
    if kind == ValueKind.AGENT:
        return _render_agent_ref(value)
    if kind == ValueKind.DICTIONARY:
        return _dictionary_entry_to_node(value)
    if kind in (ValueKind.ENERGY, ValueKind.ENERGY_DESCRIPTION):
        return value_node_to_node(value)
    return value


def _render_agent_ref(ref) -> Any:
    return agent_to_node(ref) if isinstance(ref, Agent) else ref


def _finish(node: Dict[str, Any], source: Node) -> Dict[str, Any]:
    """Add rejected values verbatim and then the opaque extras."""
    for entry in source.rejected:
        node[entry.property] = entry.value
    for key, value in source.extras.items():
        node.setdefault(key, value)
    return node
