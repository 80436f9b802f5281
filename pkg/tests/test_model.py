"""Tests for enumerations, scalar formats and element types."""

from datetime import datetime

import pytest
from dateutil import tz
from dateutil.relativedelta import relativedelta
from pydantic import ValidationError

from aibomkit.errors import BadIri, BadTimestamp, UnknownToken
from aibomkit.model import (
    AIPackage,
    ConfidentialityLevel,
    DatasetAvailability,
    DatasetPackage,
    DatasetType,
    EnergyConsumptionDescription,
    EnergyUnit,
    LicenseTargetKind,
    PackageCore,
    Presence,
    Relationship,
    RelationshipType,
    SafetyRiskAssessment,
    SoftwarePurpose,
    Timestamp,
    classify_license_target,
    format_timestamp,
    is_non_negative_decimal,
    known_field_names,
    local_name,
    parse_enum,
    parse_timestamp,
    render_enum,
    validate_iri,
)


# =============================================================================
# Enumerations
# =============================================================================


@pytest.mark.parametrize("enum_cls, count", [
    (SoftwarePurpose, 29),
    (DatasetType, 14),
    (DatasetAvailability, 5),
    (SafetyRiskAssessment, 4),
    (ConfidentialityLevel, 4),
    (EnergyUnit, 3),
    (Presence, 3),
])
def test_enumeration_sizes(enum_cls, count):
    assert len(enum_cls) == count


@pytest.mark.parametrize("enum_cls", [
    SoftwarePurpose, DatasetType, DatasetAvailability, SafetyRiskAssessment,
    ConfidentialityLevel, EnergyUnit, Presence, RelationshipType,
])
def test_every_member_survives_render_and_parse(enum_cls):
    for member in enum_cls:
        assert parse_enum(render_enum(member), enum_cls) is member


@pytest.mark.parametrize("enum_cls, near_miss", [
    (SoftwarePurpose, "Model"),
    (DatasetType, "Image"),
    (DatasetAvailability, "directdownload"),
    (SafetyRiskAssessment, "High"),
    (ConfidentialityLevel, "Amber"),
    (EnergyUnit, "kWh"),
    (Presence, "Yes"),
])
def test_parse_enum_is_case_sensitive(enum_cls, near_miss):
    with pytest.raises(UnknownToken) as excinfo:
        parse_enum(near_miss, enum_cls)
    assert excinfo.value.token == near_miss


def test_parse_enum_by_kind_name():
    assert parse_enum("kilowattHour", "EnergyUnit") is EnergyUnit.KILOWATT_HOUR
    assert parse_enum("noAssertion", Presence) is Presence.NO_ASSERTION


def test_parse_enum_rejects_non_text():
    with pytest.raises(UnknownToken):
        parse_enum(3, DatasetType)


# =============================================================================
# Timestamps
# =============================================================================


def test_timestamp_round_trip_over_random_instants(rng):
    base = datetime(1000, 1, 1, tzinfo=tz.UTC)
    span = int((datetime(9999, 12, 31, 23, 59, 59, tzinfo=tz.UTC) - base).total_seconds())
    for _ in range(10_000):
        instant = base + relativedelta(seconds=rng.randrange(span))
        text = instant.strftime("%Y-%m-%dT%H:%M:%SZ")
        parsed = parse_timestamp(text)
        assert format_timestamp(parsed) == text
        assert parsed.value == instant


@pytest.mark.parametrize("text", [
    "2024-06-20T01:00:00+01:00",
    "2024-06-20T01:00:00+00:00",
    "2024-06-20T01:00:00.5Z",
    "2024-06-20T01:00:00",
    "2024-06-20 01:00:00Z",
    "2024-06-20",
    "2023-02-29T00:00:00Z",
    "2024-13-01T00:00:00Z",
    "2024-06-31T00:00:00Z",
    "2024-06-20T24:00:00Z",
    "2024-06-20T12:60:00Z",
    " 2024-06-20T12:00:00Z",
])
def test_parse_timestamp_rejects(text):
    with pytest.raises(BadTimestamp):
        parse_timestamp(text)


def test_parse_timestamp_accepts_leap_day():
    assert str(parse_timestamp("2024-02-29T23:59:59Z")) == "2024-02-29T23:59:59Z"


def test_timestamp_requires_utc_whole_seconds():
    with pytest.raises(ValidationError):
        Timestamp(value=datetime(2024, 1, 1, 12, 0, 0))
    with pytest.raises(ValidationError):
        Timestamp(value=datetime(2024, 1, 1, 12, 0, 0, 500, tzinfo=tz.UTC))
    with pytest.raises(ValidationError):
        Timestamp(value=datetime(2024, 1, 1, 12, 0, 0, tzinfo=tz.tzoffset(None, 3600)))


# =============================================================================
# IRIs, decimals, license targets
# =============================================================================


def test_validate_iri():
    assert validate_iri("https://spdx.org/spdxdocs/SimpleHTR") == "https://spdx.org/spdxdocs/SimpleHTR"
    assert validate_iri("urn:uuid:1000e6a2-0229-4875-baa7-c99be213b6e1")
    for bad in ("", "not an iri", "example.com/path", "https:", "NOASSERTION"):
        with pytest.raises(BadIri):
            validate_iri(bad)


@pytest.mark.parametrize("text, expected", [
    ("0.042", True), ("980", True), ("36.5", True), (".5", True),
    ("-1", False), ("1e3", False), ("", False), ("1.", False), ("abc", False),
])
def test_is_non_negative_decimal(text, expected):
    assert is_non_negative_decimal(text) is expected


@pytest.mark.parametrize("text, kind", [
    ("https://spdx.org/licenses/MIT", LicenseTargetKind.LISTED),
    ("https://spdx.org/licenses/CC-BY-4.0", LicenseTargetKind.LISTED),
    ("NONE", LicenseTargetKind.NONE),
    ("NOASSERTION", LicenseTargetKind.NO_ASSERTION),
    ("MIT OR Apache-2.0", LicenseTargetKind.EXPRESSION),
    ("https://spdx.org/licenses/", LicenseTargetKind.EXPRESSION),
])
def test_classify_license_target(text, kind):
    assert classify_license_target(text).kind == kind


def test_license_relationship_classifies_every_target():
    relationship = Relationship(
        relationship_type=RelationshipType.HAS_DECLARED_LICENSE,
        from_id="https://example.org/model",
        to=("https://spdx.org/licenses/MIT", "NOASSERTION"),
    )
    assert relationship.is_license
    kinds = [target.kind for target in relationship.license_targets]
    assert kinds == [LicenseTargetKind.LISTED, LicenseTargetKind.NO_ASSERTION]


# =============================================================================
# Elements
# =============================================================================


def test_packages_are_immutable():
    package = AIPackage(core=PackageCore(name="word-model"))
    with pytest.raises(ValidationError):
        package.domain = "handwriting recognition"


def test_dataset_size_is_non_negative():
    assert DatasetPackage(dataset_size=2689).dataset_size == 2689
    with pytest.raises(ValidationError):
        DatasetPackage(dataset_size=-5)


def test_energy_quantity_keeps_lexical_form():
    description = EnergyConsumptionDescription(energy_quantity="0.0420", energy_unit=EnergyUnit.KILOWATT_HOUR)
    assert description.energy_quantity == "0.0420"
    assert str(description.quantity) == "0.0420"


def test_local_name_strips_profile_prefix():
    assert local_name("ai_metric") == "metric"
    assert local_name("dataset_datasetSize") == "datasetSize"
    assert local_name("buildTime") == "buildTime"


def test_known_field_names_cover_both_profiles():
    names = known_field_names()
    for name in ("typeOfModel", "energyUnit", "datasetSize", "sensor", "suppliedBy",
                 "externalIdentifier", "createdBy", "releaseTime"):
        assert name in names
