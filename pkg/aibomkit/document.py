"""
SPDX document container and element graph.

This module handles:
- The ordered element index and the relationship list of one document
- Document-level data: CreationInfo, profileConformance, rootElements
- Relationship lookup by source element and target resolution

Documents are immutable once built; add_element and add_relationship return
a new document.
"""

import logging
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .errors import DuplicateId
from .model import (
    AIPackage,
    CreationInfo,
    DatasetPackage,
    Element,
    EnergyConsumption,
    EnergyConsumptionDescription,
    DictionaryEntry,
    Relationship,
    RelationshipType,
)

logger = logging.getLogger(__name__)

ANONYMOUS_PREFIX = "_:element-"
PROFILE_TOKENS = ("ai", "core", "dataset", "software")

# Typed value nodes that may appear at graph level (field snippets, shared nodes)
ValueNode = Union[EnergyConsumption, EnergyConsumptionDescription, DictionaryEntry, CreationInfo]


class TargetStatus(str, Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


class SpdxDocument(BaseModel):
    """One SPDX 3.0 document: elements, relationships and document metadata."""

    model_config = ConfigDict(frozen=True)

    spdx_id: Optional[str] = None
    name: Optional[str] = None
    creation_info: Optional[CreationInfo] = None
    profile_conformance: Tuple[str, ...] = ()
    root_elements: Tuple[str, ...] = ()
    elements: Dict[str, Element] = Field(default_factory=dict)
    relationships: Tuple[Relationship, ...] = ()
    value_nodes: Tuple[ValueNode, ...] = ()
    extras: Dict[str, Any] = Field(default_factory=dict)

    # Building

    def add_element(self, element: Element) -> "SpdxDocument":
        """
        Return a copy of this document with the element appended to the index.

        Args:
            element: Element to add; one without spdxId gets an anonymous key

        Returns:
            Updated document

        Raises:
            DuplicateId: If another element already uses the same spdxId
        """
        key = element.element_id
        if key is None:
            key = f"{ANONYMOUS_PREFIX}{self.anonymous_count() + 1}"
        elif key in self.elements:
            raise DuplicateId(key)

        elements = dict(self.elements)
        elements[key] = element
        return self.model_copy(update={"elements": elements})

    def add_relationship(self, relationship: Relationship) -> "SpdxDocument":
        return self.model_copy(update={"relationships": self.relationships + (relationship,)})

    def anonymous_count(self) -> int:
        return sum(1 for key in self.elements if key.startswith(ANONYMOUS_PREFIX))

    # Lookup

    def get(self, element_id: str) -> Optional[Element]:
        return self.elements.get(element_id)

    def index_of(self, element_id: Optional[str]) -> int:
        """Position of an element in document order, -1 when unknown."""
        for position, key in enumerate(self.elements):
            if key == element_id:
                return position
        return -1

    def packages(self) -> Iterator[Tuple[str, Union[AIPackage, DatasetPackage]]]:
        for key, element in self.elements.items():
            if isinstance(element, (AIPackage, DatasetPackage)):
                yield key, element

    def relationships_from(
        self,
        element_id: str,
        relationship_type: Optional[RelationshipType] = None,
    ) -> List[Relationship]:
        """
        Relationships whose "from" is the given element, in document order.

        Args:
            element_id: Source element id; unknown ids yield an empty list
            relationship_type: Optional filter on relationshipType

        Returns:
            Matching relationships
        """
        return [
            relationship for relationship in self.relationships
            if relationship.from_id == element_id
            and (relationship_type is None or relationship.relationship_type == relationship_type)
        ]

    def resolve_targets(self, relationship: Relationship) -> List[Tuple[str, TargetStatus]]:
        """Classify each "to" id as internal (in the index) or external."""
        return [
            (target, TargetStatus.INTERNAL if target in self.elements else TargetStatus.EXTERNAL)
            for target in relationship.to
        ]

    def has_document_node(self) -> bool:
        """True when the document carries metadata that needs an SpdxDocument node."""
        return bool(
            self.spdx_id is not None
            or self.name is not None
            or self.creation_info is not None
            or self.profile_conformance
            or self.root_elements
            or self.extras
        )


def infer_profiles(document: SpdxDocument) -> Tuple[str, ...]:
    """
    Package profiles to validate against, taken from profileConformance.

    Returns the declared subset of {ai, dataset}; both when neither is declared.
    """
    declared = tuple(token for token in ("ai", "dataset") if token in document.profile_conformance)
    if not declared:
        logger.debug("No ai/dataset profile declared, checking against both")
        return ("ai", "dataset")
    return declared
