import json

import pytest

from orbiloop.cli import build_parser, main
from orbiloop.io import SchemaFormat, save_document
from orbiloop.utils.io import load_json
from orbiloop.verbs import verb_list


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    monkeypatch.setenv("ORBILOOP_DEBUG", "False")
    monkeypatch.setenv("ORBILOOP_THREADS", "1")


def _json_stdout(capsys, argv):
    code = main(["--json", "-", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_every_verb_has_a_subcommand():
    names = [verb.get_name() for verb in verb_list]
    assert names == [
        "loop",
        "inertia-check",
        "gcohom",
        "transgress",
        "holonomy-theorem",
        "deloc",
        "zcohom",
        "selftest",
        "catalog",
    ]
    args = build_parser().parse_args(["--threads", "2", "loop", "--builtin", "BS3"])
    assert args.threads == 2 and args.builtin == "BS3"


def test_rejects_bad_threads():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--threads", "0", "catalog"])


def test_holonomy_theorem(capsys):
    code, document = _json_stdout(capsys, ["holonomy-theorem", "--gamma", "4", "--phi", "1", "--N", "16"])
    assert code == 0
    assert document["verdict"] is True


def test_holonomy_theorem_text_and_file(capsys, tmp_path):
    path = tmp_path / "out" / "holonomy.json"
    assert main(["--json", str(path), "holonomy-theorem", "--gamma", "3"]) == 0
    assert "verdict: True" in capsys.readouterr().out
    assert load_json(path)["verdict"] is True


def test_precondition_exit_code():
    assert main(["holonomy-theorem", "--gamma", "4", "--N", "6"]) == 3
    assert main(["holonomy-theorem", "--gamma", "0"]) == 3


def test_bad_input_exit_code(tmp_path):
    assert main(["loop", "--input", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "group.v1", "elements": ["e"]}', encoding="utf-8")
    assert main(["gcohom", "--input", str(bad)]) == 2
    assert main(["loop", "--builtin", "nowhere"]) == 2


def test_loop_verb(capsys):
    code, document = _json_stdout(capsys, ["loop", "--builtin", "BS3"])
    assert code == 0
    assert document["schema"] == "groupoid.v1"
    assert len(document["objects"]) == 6
    assert sorted(s["size"] for s in document["loop-meta.v1"]["sectors"]) == [1, 2, 3]


def test_inertia_check(capsys):
    code, document = _json_stdout(capsys, ["inertia-check", "--builtin", "swap2"])
    assert code == 0
    assert document["pullback_model_agrees"] is True
    assert document["equivalence"]["valid"] is True


def test_gcohom_from_file(capsys, catalog, tmp_path):
    path = tmp_path / "z4.json"
    save_document(catalog.group("Z4"), SchemaFormat.group, path)
    code, document = _json_stdout(capsys, ["gcohom", "--input", str(path), "--nmax", "2"])
    assert code == 0
    assert document["order"] == 4
    assert len(document["degrees"]) == 3


def test_transgress_gerbe(capsys):
    code, document = _json_stdout(capsys, ["transgress", "--gerbe-builtin", "discrete-torsion-V4"])
    assert code == 0
    assert document["kind"] == "gerbe"
    assert sorted(document["nontrivial_sectors"]) == ["(0,1)", "(1,0)", "(1,1)"]


def test_transgress_bundle_needs_qmodz(catalog, tmp_path):
    from orbiloop.cocycles import NerveCochain

    path = tmp_path / "bundle.json"
    integral = NerveCochain(catalog.groupoid("BZ3"), 1, {})
    save_document(integral, SchemaFormat.cochain, path)
    assert main(["transgress", "--bundle", str(path)]) == 3


def test_deloc(capsys):
    code, document = _json_stdout(capsys, ["deloc", "--builtin", "S2-rot2", "--check-untwisted"])
    assert code == 0
    assert document["dims"] == [3, 0, 1]
    assert document["untwisted_rational"] == [3, 0, 1]
    assert document["euler_characteristic"] == 4


def test_deloc_with_discrete_torsion(capsys):
    code, document = _json_stdout(
        capsys, ["deloc", "--builtin", "point-V4", "--gerbe-builtin", "discrete-torsion-V4"]
    )
    assert code == 0
    assert document["dims"] == [1]
    assert main(["deloc", "--builtin", "point-V4", "--gerbe-builtin", "discrete-torsion-V4", "--check-untwisted"]) == 3


def test_zcohom(capsys):
    code, document = _json_stdout(
        capsys, ["zcohom", "--builtin", "S3-sphere", "--lambda-multiple", "1", "--mmax", "4", "--periodic"]
    )
    assert code == 0
    assert document["dims"] == [1, 0, 0, 0, 0]
    assert document["e2"]["dims"] == document["dims"]
    assert document["periodic"] == {"even": 0, "odd": 0}


def test_zcohom_rejects_negative_mmax():
    assert main(["zcohom", "--builtin", "S2", "--mmax", "-1"]) == 3


def test_catalog(capsys):
    code, document = _json_stdout(capsys, ["catalog", "--kind", "gerbe"])
    assert code == 0
    assert document["catalog"] == {"gerbe": ["discrete-torsion-V4"]}
    assert document["aliases"]["Z2xZ2"] == "V4"


def test_debug_flag(capsys):
    assert main(["--debug", "catalog", "--kind", "complex", "--validate"]) == 0
    assert "torus" in capsys.readouterr().out


def test_selftest_verb(capsys):
    code, document = _json_stdout(capsys, ["selftest", "--module", "grp-cohom", "--samples", "3"])
    assert code == 0
    assert document["passed"] is True
    assert {c["module"] for c in document["checks"]} == {"grp-cohom"}


def test_old_sympy_is_rejected(monkeypatch, capsys):
    monkeypatch.setattr("orbiloop.env.get_version", lambda name: "1.11")
    assert main(["catalog"]) == 1
    assert capsys.readouterr().out == ""
