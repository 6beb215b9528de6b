import json
from pathlib import Path

import pytest

from rbundles import cli
from rbundles.corpus import EXAMPLES
from rbundles.fields import QQ
from rbundles.verify import SweepReport

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.mark.parametrize("entry", EXAMPLES, ids=lambda e: e.name)
def test_fixture_matches_corpus(entry):
    doc = cli.parse_input(json.loads((FIXTURES / f"{entry.name}.json").read_text()))
    assert doc.A == entry.matrix(QQ)


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_round_trip(path):
    raw = json.loads(path.read_text())
    ser = cli.serialize_input(cli.parse_input(raw))
    assert cli.serialize_input(cli.parse_input(ser)) == ser
    for key in ("A", "B", "B2"):
        if key in raw:
            assert ser[key] == raw[key]


def test_round_trip_prime_field():
    doc = {"field": {"Fp": 7}, "A": {"z1": [0, 1, 0], "z2": [0, 0, 1], "q1": [0, 0, 1, 0, 0, 1],
                                     "q2": [0, 8, 0, 0, 0, 0]}}
    ser = cli.serialize_input(cli.parse_input(doc))
    assert ser["field"] == {"Fp": 7} and ser["A"]["q2"] == [0, 1, 0, 0, 0, 0]


def test_analyze_nodal(capsys):
    code, out, err = run(capsys, "analyze", str(FIXTURES / "nodal.json"))
    rep = json.loads(out)
    assert code == 0 and err == ""
    assert rep["in_X"] and rep["in_X8"]
    assert rep["support"]["boundary_class"] == "TwoPoints"
    assert rep["support"]["conic_class"] == "Smooth"
    assert rep["support"]["q"] == ["1", "0", "0"]
    assert rep["hilbert"] == {"D0": "4m + 1", "D1": "2m + 2", "h0": 1}


def test_analyze_transports_direction_through_special_form(capsys, tmp_path):
    # rows swapped: the special form needs g = [[0,1],[1,0]]
    doc = {"field": "Q",
           "A": {"z1": [0, 0, 1], "z2": [0, 1, 0], "q1": [0, 1, 0, 0, 0, 0], "q2": [0, 0, 1, 0, 0, 1]},
           "B": {"l1": [0, 0, 0], "l2": [0, 0, 0], "c1": [0, 0, 0, 0, 0, 0], "c2": [1, 0, 0, 0, 0, 0]}}
    code, out, _ = run(capsys, "analyze", write(tmp_path, doc))
    rep = json.loads(out)
    assert code == 0
    assert rep["special_form"]["certificate"]["g"] == [["0", "1"], ["1", "0"]]
    assert rep["normal_coords"] == ["1", "0"]


def test_equiv_fixture(capsys):
    # n(B2) = (2 - a02*eta0, 0) = n(B), so alpha = 1 and only the u2-shear remains
    code, out, _ = run(capsys, "equiv", str(FIXTURES / "nodal-equiv.json"))
    rep = json.loads(out)
    assert code == 0 and rep["equivalent"] and rep["alpha"] == "1"
    assert rep["witness"] == {"alpha": "1", "beta": "0", "gamma": "1"}


def test_equiv_needs_two_directions(capsys):
    code, _, err = run(capsys, "equiv", str(FIXTURES / "nodal.json"))
    assert code == 1 and "B2" in err


def test_malformed_input_names_field(capsys, tmp_path):
    doc = json.loads((FIXTURES / "nodal.json").read_text())
    doc["A"]["q1"][2] = 1.5
    code, out, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 1 and out == "" and "A.q1[2]" in err
    doc["A"]["z1"] = [0, 1]
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 1 and "A.z1" in err
    code, _, err = run(capsys, "analyze", write(tmp_path, {"field": {"Fp": 6}, "A": doc["A"]}))
    assert code == 1 and "field" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 1


def test_precondition_failures_exit_2(capsys, tmp_path):
    doc = json.loads((FIXTURES / "nodal.json").read_text())
    doc["B"] = {"l1": [0, 0, 0], "l2": [1, 0, 0], "c1": [1, 0, 0, 0, 0, 0], "c2": [0, 0, 0, 0, 0, 0]}
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 2 and "TangentDirection" in err
    doc = {"field": "Q", "A": {"z1": [0, 1, 0], "z2": [0, 0, 1], "q1": [1, 0, 0, 0, 0, 0], "q2": [0, 1, 0, 0, 0, 0]}}
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 2 and "NotInX8" in err


def test_hilbert_command(capsys):
    code, out, _ = run(capsys, "hilbert", str(FIXTURES / "nodal.json"), "--max-m", "3")
    rep = json.loads(out)
    assert code == 0
    assert rep["coker_HF"] == {"0": 1, "1": 7, "2": 13, "3": 19}
    assert rep["chi_additivity"] == {"H": "3m + 1", "H+F": "6m + 1"}
    assert all(p["dims"] == [4, 7, 10, 13] for p in rep["flat_family"])


def test_cohomology_table(capsys):
    code, out, _ = run(capsys, "cohomology-table")
    rep = json.loads(out)
    assert code == 0 and rep["all_match"] and len(rep["twists"]) == 11


def test_examples_table(capsys):
    code, out, _ = run(capsys, "examples")
    rep = json.loads(out)
    assert code == 0
    got = {r["name"]: r["boundary_class"] for r in rep["examples"]}
    assert got == {e.name: e.boundary_class for e in EXAMPLES}
    assert {s["name"]: s["F7_count"] for s in rep["stabilizers"]} == {
        "smooth-transverse": 2, "two-lines-transverse": 6, "smooth-tangent": 1,
        "singular-tangent": 14, "contains-L": 42,
    }


def test_verify_and_verbose(capsys):
    code, out, err = run(capsys, "--verbose", "verify", "--prime", "5", "--samples", "10", "--seed", "42")
    rep = json.loads(out)
    assert code == 0
    assert all(r["failures"] == 0 for r in rep["reports"])
    assert "singular: 10 passed, 0 failed" in err


def test_verify_bad_prime_is_malformed(capsys):
    code, _, err = run(capsys, "verify", "--prime", "9", "--samples", "1")
    assert code == 1 and "verify" in err


def test_verify_failure_exit_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_sweeps", lambda cfg: [SweepReport("singular", 5, 1, 0, 1, {"index": 0})])
    code, out, _ = run(capsys, "verify", "--samples", "1")
    assert code == 3 and json.loads(out)["reports"][0]["failures"] == 1
