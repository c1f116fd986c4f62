from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from heightlab.cli import SCHEMA, main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:       # argparse rejects before main returns
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    return doc


# --- curve-info ---------------------------------------------------------------------------

def test_curve_info_j_values(capsys):
    assert run_json(capsys, "curve-info", "--curve", "1,0")["result"]["j"] == "1728"
    assert run_json(capsys, "curve-info", "--curve", "0,1")["result"]["j"] == "0"


def test_curve_info_37a1_at_37(capsys):
    red = run_json(capsys, "curve-info", "--curve-long", "0,0,1,-1,0", "--prime", "37")["result"]["reduction"]
    # the point-count oracle gives 38 = p + 1 nonsingular points: nonsplit
    assert red["type"] == "MultNonsplit"
    assert red["component_index_N"] == 1 and red["ord_min_disc"] == 1


def test_curve_info_split_example(capsys):
    red = run_json(capsys, "curve-info", "--curve-long", "0,-1,1,-10,-20", "--prime", "11")["result"]["reduction"]
    assert red["type"] == "MultSplit" and red["component_index_N"] == 5


def test_curve_info_points(capsys):
    doc = run_json(capsys, "curve-info", "--curve=-2,0", "--points", "--hmax", "1")
    assert ["-1", "1"] in doc["result"]["points"] and ["0", "0"] in doc["result"]["points"]


def test_rationals_serialise_as_strings(capsys):
    doc = run_json(capsys, "curve-info", "--curve-long", "0,0,1,-1,0")
    assert doc["result"]["j"] == "110592/37"
    assert Fraction(doc["result"]["j"]) == Fraction(110592, 37)
    value, err = doc["result"]["h_j"]
    assert isinstance(value, str) and isinstance(err, str)


@pytest.mark.parametrize("argv", [["curve-info", "--curve", "0,0"], ["curve-info", "--curve", "1,2,3"],
                                  ["curve-info", "--curve", "a,b"], ["curve-info"],
                                  ["curve-info", "--curve", "1,0", "--curve-long", "0,0,0,1,0"]])
def test_curve_info_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code != 0 and err and not out


# --- height ----------------------------------------------------------------------------------

def test_height_torsion_is_zero(capsys):
    doc = run_json(capsys, "height", "--curve", "0,1", "--point", "2,3")
    assert float(doc["result"]["canonical_height"][0]) == 0


def test_height_generator_with_lattes(capsys):
    doc = run_json(capsys, "height", "--curve-long", "0,0,1,-1,0", "--point", "0,0", "--lattes")
    res = doc["result"]
    assert abs(float(res["canonical_height"][0]) - 0.0255557041) < 1e-9
    assert res["lattes"]["ratio_is_2"]
    assert abs(float(res["lattes"]["ratio"][0]) - 2) < 1e-6


def test_height_matches_decomposition(capsys):
    from heightlab.curves import CurvePoint, WeierstrassCurve
    from heightlab.heights import decomposition_height

    doc = run_json(capsys, "height", "--curve-long", "0,1,1,-2,0", "--point", "0,0")
    E = WeierstrassCurve.parse("0,1,1,-2,0")
    oracle = decomposition_height(E, CurvePoint(0, 0))
    assert abs(float(doc["result"]["canonical_height"][0]) - float(oracle.value)) < 1e-6


def test_height_split_table(capsys):
    doc = run_json(capsys, "height", "--curve-long", "0,1,1,-7,5", "--point=-1,3", "--prime", "7",
                   "--smax", "5")
    tab = doc["result"]["split_table"]
    assert tab["ok"] and len(tab["rows"]) == 5


def test_height_point_off_curve(capsys):
    code, _, err = run(capsys, "height", "--curve", "0,1", "--point", "2,4")
    assert code == 1 and "not on" in err


def test_height_smax_validated(capsys):
    code, _, err = run(capsys, "height", "--curve", "0,1", "--point", "2,3", "--smax", "1")
    assert code != 0 and "smax" in err


# --- bound --------------------------------------------------------------------------------------

def test_bound_41_on_corpus_curve(capsys):
    doc = run_json(capsys, "bound", "--variant", "41", "--curve-long", "0,1,1,-2,0", "--params", "p=389")
    res = doc["result"]
    names = [n for n, _ in res["trace"]]
    assert "frak_c" in names and res["frak_c"] == 15
    assert float(res["height_bound"][0]) > 0


def test_bound_26_from_params(capsys):
    doc = run_json(capsys, "bound", "--variant", "26", "--params", "p=3", "h_j=0", "f=1", "nu=0")
    assert dict((n, v) for n, v in doc["result"]["trace"])["M"] in (784, "784")


def test_bound_csv(capsys):
    code, out, _ = run(capsys, "bound", "--variant", "42", "--params", "p=7", "h_j=10", "j_ord=1",
                       "--output", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {"frak_c", "c", "c_P", "c_P_proof_line"} <= {r["name"] for r in rows}


@pytest.mark.parametrize("argv", [["bound", "--variant", "99", "--params", "p=3"],
                                  ["bound", "--variant", "41", "--params", "p=3"],
                                  ["bound", "--variant", "41", "--params", "p=3", "h_j=1", "bogus=2"],
                                  ["bound", "--variant", "41", "--params", "p3"]])
def test_bound_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "usage" in err


# --- counterexample and construct-point -----------------------------------------------------------

def test_counterexample_four_levels(capsys):
    doc = run_json(capsys, "counterexample", "--prime", "5", "--levels", "4")
    levels = doc["result"]["levels"]
    ratios = [Fraction(lv["hf_ratio"]) for lv in levels]
    steps = [b / a for a, b in zip(ratios, ratios[1:])]
    assert len(steps) == 4 and all(s == Fraction(1, 4) for s in steps)
    assert all(lv["unram_cert"] == "Unramified" for lv in levels[:4])


def test_counterexample_csv(capsys):
    code, out, _ = run(capsys, "counterexample", "--prime", "3", "--levels", "2", "--output", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["hf_ratio"] for r in rows] == ["1", "1/4", "1/16"]


def test_construct_point(capsys):
    res = run_json(capsys, "construct-point", "--curve", "0,1", "--prime", "5")["result"]
    assert res["x"] == "5" and res["y_poly"] == "x^2 - 126"
    assert res["nontorsion"] and res["certificates"][0]["verdict"] == "Unramified"


def test_construct_point_needs_short_curve(capsys):
    code, _, err = run(capsys, "construct-point", "--curve-long", "0,0,1,-1,0", "--prime", "5")
    assert code != 0 and err


# --- global options -------------------------------------------------------------------------------

def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "curve-info", "--curve", "1,0", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["result"]["j"] == "1728"


def test_precision_env(monkeypatch, capsys):
    monkeypatch.setenv("HEIGHTLAB_PRECISION", "256")
    doc = run_json(capsys, "height", "--curve-long", "0,0,1,-1,0", "--point", "0,0")
    assert doc["result"]["canonical_height"][0].startswith("0.0255557041")
    monkeypatch.setenv("HEIGHTLAB_PRECISION", "32")
    code, _, err = run(capsys, "height", "--curve-long", "0,0,1,-1,0", "--point", "0,0")
    assert code != 0 and "precision" in err
    # the flag wins over the environment
    run_json(capsys, "height", "--curve-long", "0,0,1,-1,0", "--point", "0,0", "--precision", "128")


def test_deterministic_output(capsys):
    argv = ["bound", "--variant", "51", "--curve-long", "0,0,1,-1,0", "--params", "p=37", "--seed", "3"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_fast_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "ramify")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["failures"] == []
    assert "[PASS] 10." in err


@pytest.mark.slow
def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all")
    doc = json.loads(out)
    assert code == 0 and len(doc["results"]) == 12
