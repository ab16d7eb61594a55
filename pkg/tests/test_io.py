import json

import pytest
from sympy import Rational

from orbiloop.cocycles import NerveCochain
from orbiloop.cohomology import Coefficients, QmodZ
from orbiloop.exceptions import SchemaError
from orbiloop.io import (
    Cochain3Reader,
    CochainReader,
    GComplexReader,
    GroupoidReader,
    GroupReader,
    SchemaFormat,
    TwistingData,
    generic_load,
    get_reader,
    get_writer,
    load_document,
    save_document,
)
from orbiloop.utils.io import dumps, load_json
from orbiloop.zcomplex import SimplicialCochain, top_cocycle

Z2_DOCUMENT = {
    "schema": "group.v1",
    "name": "flip",
    "elements": ["e", "s"],
    "table": [["e", "s"], ["s", "e"]],
}


def test_reads_inline_group(catalog):
    group = GroupReader(catalog).load(Z2_DOCUMENT)
    assert group.name == "flip"
    assert group.order == 2
    assert group.label(group.mul(1, 1)) == "e"


def test_group_reference_by_name(catalog):
    assert GroupReader(catalog).load("Z2xZ2") is catalog.group("V4")


@pytest.mark.parametrize(
    "document, path",
    [
        ({**Z2_DOCUMENT, "table": [["e", "s"]]}, "/table"),
        ({**Z2_DOCUMENT, "table": [["e", "s"], ["s", "x"]]}, "/table/1/1"),
        ({**Z2_DOCUMENT, "elements": ["e", "e"]}, "/elements"),
        ({"schema": "group.v1", "elements": ["e"]}, "/table"),
        ({**Z2_DOCUMENT, "schema": "groupoid.v1"}, "/schema"),
    ],
)
def test_group_schema_errors(catalog, document, path):
    with pytest.raises(SchemaError) as info:
        GroupReader(catalog).load(document)
    assert info.value.path == path
    assert info.value.exit_code == 2


def test_written_group_reads_back(catalog):
    s3 = catalog.group("S3")
    document = get_writer(SchemaFormat.group).save(s3)
    assert document["schema"] == "group.v1"
    assert GroupReader(catalog).load(json.loads(dumps(document))) == s3


def test_groupoid_documents(catalog):
    swap2 = catalog.groupoid("swap2")
    document = get_writer(SchemaFormat.groupoid).save(swap2)
    loaded = GroupoidReader(catalog).load(json.loads(dumps(document)))
    assert loaded.num_objects == 2
    assert loaded.num_morphisms == swap2.num_morphisms
    assert loaded.validate().valid
    # a group document is read as its one-object groupoid
    bz2 = GroupoidReader(catalog).load(Z2_DOCUMENT)
    assert bz2.num_objects == 1 and bz2.num_morphisms == 2


def test_groupoid_schema_errors(catalog):
    document = get_writer(SchemaFormat.groupoid).save(catalog.groupoid("swap2"))
    broken = {**document, "compose": document["compose"] + [document["compose"][0]]}
    with pytest.raises(SchemaError) as info:
        GroupoidReader(catalog).load(broken)
    assert info.value.path == f"/compose/{len(document['compose'])}"
    missing = {k: v for k, v in document.items() if k != "inv"}
    with pytest.raises(SchemaError) as info:
        GroupoidReader(catalog).load(missing)
    assert info.value.path == "/inv"


def test_reads_cochain_on_named_group(catalog):
    document = {
        "schema": "cochain.v1",
        "group": "Z3",
        "degree": 1,
        "coefficients": "QmodZ",
        "entries": [{"args": ["1"], "value": "1/3"}, {"args": ["2"], "value": "2/3"}],
    }
    cochain = CochainReader(catalog).load(document)
    assert cochain.groupoid is catalog.groupoid("BZ3")
    assert cochain.coefficients is Coefficients.QMODZ
    assert cochain.value("2") == QmodZ(2, 3)
    assert cochain.is_cocycle()


def test_cochain_writer_inlines_the_base(catalog):
    bz3 = catalog.groupoid("BZ3")
    cochain = NerveCochain.from_function(bz3, 1, lambda g: QmodZ(int(g), 3), Coefficients.QMODZ)
    document = get_writer(SchemaFormat.cochain).save(cochain)
    assert document["group"]["schema"] == "group.v1"
    assert document["entries"][0] == {"args": ["1"], "value": "1/3"}
    loaded = CochainReader(catalog).load(document)
    assert [loaded.value(g) for g in ("0", "1", "2")] == [QmodZ(0), QmodZ(1, 3), QmodZ(2, 3)]


@pytest.mark.parametrize(
    "entries, coefficients, path",
    [
        ([{"args": ["1"], "value": "1/2"}], "Z", "/entries/0/value"),
        ([{"args": ["1", "2"], "value": 1}], "Z", "/entries/0/args"),
        ([{"args": ["1"], "value": 1}, {"args": ["1"], "value": 2}], "Z", "/entries/1/args"),
        ([{"args": ["1"]}], "Z", "/entries/0/value"),
        ([], "R", "/coefficients"),
    ],
)
def test_cochain_schema_errors(catalog, entries, coefficients, path):
    document = {"schema": "cochain.v1", "group": "Z3", "degree": 1, "coefficients": coefficients, "entries": entries}
    with pytest.raises(SchemaError) as info:
        CochainReader(catalog).load(document)
    assert info.value.path == path


def test_cochain_needs_a_base(catalog):
    with pytest.raises(SchemaError) as info:
        CochainReader(catalog).load({"schema": "cochain.v1", "degree": 0, "entries": []})
    assert info.value.path == "/groupoid"


def test_reads_gcomplex(catalog):
    document = {
        "schema": "gcomplex.v1",
        "vertices": ["a", "b"],
        "simplices": [["a", "b"]],
        "group": "Z2",
        "action": {"0": {"a": "a", "b": "b"}, "1": {"a": "b", "b": "a"}},
    }
    space = GComplexReader(catalog).load(document)
    assert space.group is catalog.group("Z2")
    assert space.orbit("a") == ["a", "b"]
    with pytest.raises(SchemaError) as info:
        GComplexReader(catalog).load({**document, "action": {"7": {}}})
    assert info.value.path == "/action/7"
    with pytest.raises(SchemaError) as info:
        GComplexReader(catalog).load({**document, "simplices": [["a", "c"]]})
    assert info.value.path == "/simplices/0"


def test_gcomplex_writer(catalog):
    document = get_writer(SchemaFormat.gcomplex).save(catalog.gcomplex("interval-swap"))
    assert document["schema"] == "gcomplex.v1"
    assert document["group"]["schema"] == "group.v1"
    assert GComplexReader(catalog).load(document).complex == catalog.complex("interval")


def test_reads_twisting_data(catalog):
    document = {
        "schema": "cochain3.v1",
        "complex": "S3-sphere",
        "degree": 3,
        "entries": [{"simplex": ["0", "1", "2", "3"], "value": "2"}],
    }
    data = Cochain3Reader(catalog).load(document)
    assert isinstance(data, TwistingData)
    assert data.complex is catalog.complex("S3-sphere")
    assert data.lam.value(("0", "1", "2", "3")) == Rational(2)
    assert data.local_system is None
    with pytest.raises(SchemaError) as info:
        Cochain3Reader(catalog).load({**document, "degree": 2})
    assert info.value.path == "/degree"
    with pytest.raises(SchemaError) as info:
        Cochain3Reader(catalog).load({**document, "entries": [{"simplex": ["0", "1", "2"], "value": 1}]})
    assert info.value.path == "/entries/0/simplex"


def test_twisting_data_with_local_system(catalog):
    torus = catalog.complex("torus")
    document = {
        "schema": "cochain3.v1",
        "complex": "torus",
        "entries": [],
        "local_system": [],
    }
    data = Cochain3Reader(catalog).load(document)
    assert data.lam.degree == 3
    assert data.local_system is not None and data.local_system.is_trivial()
    assert data.complex is torus


def test_cochain3_writer(catalog):
    sphere = catalog.complex("S3-sphere")
    data = TwistingData(sphere, top_cocycle(sphere, 2), None)
    document = get_writer(SchemaFormat.cochain3).save(data)
    assert document["schema"] == "cochain3.v1"
    assert document["complex"]["schema"] == "scomplex.v1"
    loaded = Cochain3Reader(catalog).load(json.loads(dumps(document)))
    assert loaded.lam == SimplicialCochain(loaded.complex, 3, {s: v for s, v in data.lam.items()})


def test_generic_load_dispatches_on_schema(catalog):
    assert generic_load(Z2_DOCUMENT, catalog=catalog).order == 2
    assert generic_load(Z2_DOCUMENT, SchemaFormat.group, catalog).order == 2
    with pytest.raises(SchemaError) as info:
        generic_load(Z2_DOCUMENT, SchemaFormat.groupoid, catalog)
    assert info.value.path == "/schema"
    with pytest.raises(SchemaError) as info:
        generic_load({"elements": []}, catalog=catalog)
    assert info.value.path == "/schema"
    with pytest.raises(SchemaError):
        generic_load({"schema": "group.v9"}, catalog=catalog)
    assert isinstance(get_reader(SchemaFormat.scomplex, catalog).load("S2").f_vector(), list)


def test_documents_on_disk(catalog, tmp_path):
    path = tmp_path / "nested" / "s3.json"
    document = save_document(catalog.group("S3"), SchemaFormat.group, path)
    assert path.read_text(encoding="utf-8") == dumps(document)
    assert load_document(path, SchemaFormat.group, catalog) == catalog.group("S3")


def test_load_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(SchemaError) as info:
        load_json(bad)
    assert "invalid JSON" in info.value.message
    with pytest.raises(SchemaError):
        load_json(tmp_path / "missing.json")


def test_dumps_is_deterministic():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")
