"""Tests for the document container and element graph."""

import pytest

from aibomkit.document import ANONYMOUS_PREFIX, SpdxDocument, TargetStatus, infer_profiles
from aibomkit.errors import DuplicateId
from aibomkit.model import (
    Agent,
    AgentKind,
    AIPackage,
    DatasetPackage,
    PackageCore,
    Relationship,
    RelationshipType,
)

MODEL_ID = "https://spdx.org/spdxdocs/SimpleHTR/AIPackage/word-model"
DATASET_ID = "https://spdx.org/spdxdocs/SimpleHTR/DatasetPackage/IAMdataset"


def _model():
    return AIPackage(core=PackageCore(spdx_id=MODEL_ID, name="word-model"))


def _dataset():
    return DatasetPackage(core=PackageCore(spdx_id=DATASET_ID, name="IAMdataset"))


def test_add_element_returns_new_document():
    empty = SpdxDocument()
    document = empty.add_element(_model())
    assert empty.elements == {}
    assert list(document.elements) == [MODEL_ID]


def test_add_element_rejects_duplicate_id():
    document = SpdxDocument().add_element(_model())
    with pytest.raises(DuplicateId) as excinfo:
        document.add_element(_model())
    assert excinfo.value.spdx_id == MODEL_ID


def test_anonymous_elements_get_internal_keys():
    document = SpdxDocument()
    document = document.add_element(Agent(kind=AgentKind.PERSON, name="Harald Scheidl"))
    document = document.add_element(Agent(kind=AgentKind.ORGANIZATION, name="Example AI Co-op"))
    assert list(document.elements) == [f"{ANONYMOUS_PREFIX}1", f"{ANONYMOUS_PREFIX}2"]
    assert document.anonymous_count() == 2


def test_index_keeps_insertion_order():
    document = SpdxDocument().add_element(_dataset()).add_element(_model())
    assert document.index_of(DATASET_ID) == 0
    assert document.index_of(MODEL_ID) == 1
    assert document.index_of("https://example.com/unknown") == -1
    assert [key for key, _ in document.packages()] == [DATASET_ID, MODEL_ID]


def test_relationships_from_filters_by_type():
    trained = Relationship(relationship_type=RelationshipType.TRAINED_ON, from_id=MODEL_ID, to=(DATASET_ID,))
    tested = Relationship(relationship_type=RelationshipType.TESTED_ON, from_id=MODEL_ID, to=(DATASET_ID,))
    document = (SpdxDocument().add_element(_model()).add_element(_dataset())
                .add_relationship(trained).add_relationship(tested))

    assert document.relationships_from(MODEL_ID) == [trained, tested]
    assert document.relationships_from(MODEL_ID, RelationshipType.TRAINED_ON) == [trained]
    assert document.relationships_from(DATASET_ID) == []
    assert document.relationships_from("https://example.com/unknown") == []


def test_resolve_targets_classifies_internal_and_external():
    relationship = Relationship(
        relationship_type=RelationshipType.HAS_DECLARED_LICENSE,
        from_id=MODEL_ID,
        to=(DATASET_ID, "https://spdx.org/licenses/MIT"),
    )
    document = SpdxDocument().add_element(_model()).add_element(_dataset())
    assert document.resolve_targets(relationship) == [
        (DATASET_ID, TargetStatus.INTERNAL),
        ("https://spdx.org/licenses/MIT", TargetStatus.EXTERNAL),
    ]


def test_has_document_node():
    assert not SpdxDocument().has_document_node()
    assert SpdxDocument(root_elements=(MODEL_ID,)).has_document_node()


@pytest.mark.parametrize("declared, expected", [
    ((), ("ai", "dataset")),
    (("core", "software"), ("ai", "dataset")),
    (("core", "ai"), ("ai",)),
    (("core", "software", "dataset"), ("dataset",)),
    (("core", "ai", "dataset"), ("ai", "dataset")),
])
def test_infer_profiles(declared, expected):
    assert infer_profiles(SpdxDocument(profile_conformance=declared)) == expected


def test_simplehtr_graph(simplehtr):
    assert isinstance(simplehtr.get(MODEL_ID), AIPackage)
    assert isinstance(simplehtr.get(DATASET_ID), DatasetPackage)
    trained = simplehtr.relationships_from(MODEL_ID, RelationshipType.TRAINED_ON)
    assert trained and DATASET_ID in trained[0].to
    assert simplehtr.root_elements == (MODEL_ID,)
