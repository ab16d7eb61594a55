import pytest

from orbiloop.config import KINDS, Catalog, default_catalog
from orbiloop.exceptions import SchemaError


def test_every_builtin_validates(catalog):
    reports = catalog.validate_all()
    assert len(reports) == sum(len(catalog.names(kind)) for kind in KINDS)
    assert [name for name, report in reports.items() if not report.valid] == []


def test_lookups_are_cached(catalog):
    assert catalog.group("S3") is catalog.group("S3")
    assert catalog.groupoid("BS3").group is catalog.group("S3")
    assert catalog.gerbe("discrete-torsion-V4").base is catalog.groupoid("BV4")


def test_aliases(catalog):
    assert catalog.resolve("Z2xZ2") == "V4"
    assert catalog.aliases.inverse["V4"] == "Z2xZ2"
    assert catalog.group("Z2xZ2") is catalog.group("V4")
    assert catalog.complex("boundary-3-simplex") is catalog.complex("S2")
    assert ("group", "Z2xZ2") in catalog
    assert ("complex", "Z2xZ2") not in catalog


def test_names_sort_naturally(catalog):
    groups = catalog.names("group")
    assert groups.index("Z2") < groups.index("Z10")
    assert {"S3", "D4", "Q8", "V4", "Z12"} <= set(groups)
    listing = catalog.listing()
    assert list(listing) == list(KINDS)
    assert "torus" in listing["complex"]


def test_unknown_builtin(catalog):
    with pytest.raises(SchemaError) as info:
        catalog.group("Z99", "/group")
    assert info.value.path == "/group"
    with pytest.raises(SchemaError):
        catalog.complex("S7")


def test_register_rejects_unknown_kinds():
    with pytest.raises(ValueError):
        Catalog().register("ring", "Z", lambda: None)


def test_separate_catalogs_build_separately(catalog):
    other = default_catalog()
    assert other.group("S3") == catalog.group("S3")
    assert other.group("S3") is not catalog.group("S3")
