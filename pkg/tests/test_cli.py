import json
from pathlib import Path

import pytest

from hhfermat.cli import main

ROOT = Path(__file__).resolve().parent.parent
SPECS = ROOT / "specs"
SMALL = ["--n", "3", "--N", "3", "--gen", "(1,2,3)", "--gen", "J"]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, json.loads(out or err)


@pytest.mark.parametrize("cmd", ["closure", "sectors", "table", "invariants", "gradings"])
def test_commands_succeed(cmd, capsys):
    code, doc = run([cmd, *SMALL], capsys)
    assert code == 0
    assert doc["header"]["n"] == 3
    assert cmd in doc


def test_closure_order(capsys):
    code, doc = run(["closure", *SMALL], capsys)
    assert doc["closure"]["group"]["order"] == 9
    assert len(doc["closure"]["group"]["elements"]) == 9


def test_invariants_dimension(capsys):
    _, doc = run(["invariants", *SMALL], capsys)
    assert doc["invariants"]["dimension"] == 4
    assert all(doc["invariants"]["flags"].values())


def test_product_of_elements(capsys):
    code, doc = run(["product", *SMALL, "--left", "J", "--right", "J^2"], capsys)
    assert code == 0
    assert doc["product"]["result"]


def test_product_of_basis_elements(capsys):
    code, doc = run(["product", *SMALL, "--basis", "0", "0"], capsys)
    assert code == 0
    assert "coordinates" in doc["product"]


def test_sectors_dimension_sums(capsys):
    _, doc = run(["sectors", *SMALL], capsys)
    body = doc["sectors"]
    assert body["dimension"] == sum(s["dim_jac"] for s in body["sectors"])


@pytest.mark.parametrize("name,group", [
    ("example1.json", "G1"), ("example1.json", "G2"),
    ("example3.json", "A1"), ("example3.json", "A2"),
])
def test_spec_goldens_pass(name, group, capsys):
    code, doc = run(["verify", "--spec", str(SPECS / name), "--group", group], capsys)
    assert code == 0, [g for g in doc["verify"]["golden"] if not g["passed"]]
    assert doc["header"]["group"] == group


def test_golden_group_filter(capsys):
    _, doc = run(["verify", "--spec", str(SPECS / "example1.json"), "--group", "G2"], capsys)
    spec = json.loads((SPECS / "example1.json").read_text())
    expected = [g for g in spec["golden"] if g.get("group") in (None, "G2")]
    assert len(doc["verify"]["golden"]) == len(expected)


def test_verify_full_on_small_group(capsys):
    code, doc = run(["verify", "--n", "4", "--N", "2", "--gen", "(1,2)[1,3]", "--verify-level", "full"], capsys)
    assert code == 0
    names = {p["name"] for p in doc["verify"]["properties"]}
    assert "associativity on basis triples" in names
    assert "Clifford oracle sigma = cup table sigma" in names
    assert all(p["passed"] for p in doc["verify"]["properties"])
    assert all("seconds" not in p for p in doc["verify"]["properties"])


def test_failing_golden_exits_1(tmp_path, capsys):
    spec = {"n": 3, "N": 3, "generators": ["(1,2,3)", "J"],
            "golden": [{"kind": "dimension", "value": 5}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    code, doc = run(["verify", "--spec", str(p)], capsys)
    assert code == 1
    assert doc["verify"]["passed"] is False


def test_golden_with_unknown_kind_is_a_failure(tmp_path, capsys):
    spec = {"n": 3, "N": 3, "generators": ["J"], "golden": [{"kind": "volume"}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    code, doc = run(["verify", "--spec", str(p)], capsys)
    assert code == 1
    assert "error" in doc["verify"]["golden"][0]


def test_malformed_golden_element_is_input_error(tmp_path, capsys):
    spec = {"n": 3, "N": 3, "generators": ["J"],
            "golden": [{"kind": "product", "left": "xi('nope')", "right": "J", "expect": "0"}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    code, doc = run(["verify", "--spec", str(p)], capsys)
    assert code == 2
    assert "nope" in doc["error"]["message"]


@pytest.mark.parametrize("argv", [
    ["closure"],
    ["closure", "--n", "3", "--N", "3", "--gen", "(1,4)"],
    ["closure", "--spec", "/nonexistent.json"],
    ["closure", "--n", "1", "--N", "3", "--gen", "J"],
    ["closure", "--spec", str(SPECS / "example1.json"), "--group", "nope"],
    ["product", *SMALL, "--left", "x1*xi('J')", "--right", "J"],
    ["closure", "--n", "3", "--N", "3", "--gen", "J", "--L", "4"],
])
def test_input_errors_exit_2(argv, capsys):
    code, doc = run(argv, capsys)
    assert code == 2
    assert "error" in doc


def test_group_cap_exits_3(capsys):
    code, doc = run(["closure", "--n", "3", "--N", "4", "--gen", "(1,2,3,4)", "--gen", "(1,2)", "--gen", "[1,0,0,0]", "--max-group-order", "50"], capsys)
    assert code == 3
    assert doc["error"]["kind"] == "group"


def test_table_jobs_deterministic(capsys):
    argv = ["table", "--n", "3", "--N", "3", "--gen", "(1,2)", "--gen", "J"]
    main(argv)
    one = capsys.readouterr().out
    main(argv + ["--jobs", "2"])
    two = capsys.readouterr().out
    assert one == two


def test_out_file(tmp_path, capsys):
    out = tmp_path / "inv.json"
    code = main(["invariants", *SMALL, "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["invariants"]["dimension"] == 4


def test_repeat_runs_are_byte_identical(capsys):
    main(["invariants", *SMALL])
    a = capsys.readouterr().out
    main(["invariants", *SMALL])
    assert capsys.readouterr().out == a
