# -*- coding: utf-8 -*-

import json

import pandas as pd
import pytest

from hamsim.cli import build_parser, main
from hamsim.report import load_document, pct, slug


def _simulate(outDir, *extra):
    return main(["simulate", "--layout", "Ham7,4,A", "--layout", "Ham31,26",
                 "--out", str(outDir), "--jobs", "1"] + list(extra))


def test_pct_rounds_half_up():
    assert pct(42.85) == "42.9"
    assert pct(0.05) == "0.1"
    assert pct(25) == "25.0"
    assert pct(96.875) == "96.9"


def test_slug():
    assert slug("Ham7,4,A") == "ham7_4_a"
    assert slug("Ham15,11,7,4") == "ham15_11_7_4"


def test_simulate_writes_json_and_tables(tmp_path):
    assert _simulate(tmp_path, "--pattern", "1", "--pattern", "2") == 0

    doc = load_document(str(tmp_path / "campaign.json"))
    assert doc["kind"] == "campaign"
    assert doc["settings"]["patterns"] == [1, 2]
    assert [x["name"] for x in doc["layouts"]] == ["Ham7,4,A", "Ham31,26"]
    first = doc["layouts"][0]["patterns"][0]
    assert (first["dc"], first["dnc"], first["nd"]) == (224, 0, 32)

    table = pd.read_csv(tmp_path / "ham7_4_a_patterns.csv")
    assert list(table["pattern"]) == [1, 2]
    assert table.loc[0, "dc_pct"] == 87.5
    for name in ("ham31_26_groups.csv", "means_groups.csv", "means_patterns.csv"):
        assert (tmp_path / name).is_file()


def test_simulate_output_does_not_depend_on_jobs(tmp_path):
    one, three = tmp_path / "one", tmp_path / "three"
    assert _simulate(one, "--pattern", "2", "--pattern", "21", "--format", "json") == 0
    assert main(["simulate", "--layout", "Ham7,4,A", "--layout", "Ham31,26",
                 "--out", str(three), "--jobs", "3", "--pattern", "2", "--pattern", "21",
                 "--format", "json"]) == 0
    assert (one / "campaign.json").read_bytes() == (three / "campaign.json").read_bytes()
    assert not (one / "means_groups.csv").exists()


def test_simulate_physical(tmp_path):
    assert _simulate(tmp_path, "--pattern", "2", "--physical", "extended",
                     "--seed", "9") == 0
    doc = load_document(str(tmp_path / "campaign.json"))
    physical = {x["name"]: x for x in doc["physical"]}
    assert physical["Ham7,4,A"]["mode"] == "extended"
    assert physical["Ham7,4,A"]["patterns"][0]["detected_uncorrectable"] == 384
    assert (tmp_path / "ham7_4_a_physical_extended.csv").is_file()


def test_report_rerenders(tmp_path):
    assert _simulate(tmp_path, "--pattern", "1", "--format", "json") == 0
    outDir = tmp_path / "tables"
    assert main(["report", str(tmp_path / "campaign.json"), "--out", str(outDir)]) == 0
    groups = pd.read_csv(outDir / "ham31_26_groups.csv")
    assert groups.loc[0, "group"] == "G1"
    assert groups.loc[0, "dc"] == 248


def test_reliability_from_saved_campaign(tmp_path):
    assert _simulate(tmp_path, "--format", "json") == 0
    relDir = tmp_path / "rel"
    assert main(["reliability", "--layout", "Ham31,26", "--layout", "Ham7,4,A",
                 "--results", str(tmp_path / "campaign.json"),
                 "--calibrate", "ham31,26:500:0.7143", "--t-grid", "0:1000:250",
                 "--out", str(relDir)]) == 0

    doc = load_document(str(relDir / "reliability.json"))
    assert doc["settings"]["calibration"]["layout"] == "Ham31,26"
    assert doc["series"]["t"] == [0.0, 250.0, 500.0, 750.0, 1000.0]
    curves = {x["layout"]: x["r"] for x in doc["series"]["curves"]}
    assert curves["Ham31,26"][0] == 1.0
    assert curves["Ham31,26"][2] == pytest.approx(0.7143, abs=1e-6)
    assert curves["Ham7,4,A"][2] < curves["Ham31,26"][2]
    atAnchor = doc["settings"]["calibration"]["reliability"]
    assert [x["layout"] for x in atAnchor] == ["Ham31,26", "Ham7,4,A"]
    assert atAnchor[0]["r"] == pytest.approx(0.7143, abs=1e-6)
    assert atAnchor[1]["r"] == pytest.approx(curves["Ham7,4,A"][2])

    redundancy = pd.read_csv(relDir / "redundancy.csv", dtype={"tr_pct": str})
    assert list(redundancy["tr_pct"]) == ["16.1", "42.9"]
    fcTables = pd.read_csv(relDir / "fc_tables.csv")
    assert list(fcTables.columns) == ["layout", "p_fc_1f", "p_fc_2f", "p_fc_3f", "p_fc_4f"]
    assert (relDir / "reliability.csv").is_file()


def test_reliability_with_lambda(tmp_path):
    assert main(["reliability", "--layout", "Ham15,11", "--lambda", "1e-5",
                 "--t-grid", "0:500:100", "--out", str(tmp_path), "--jobs", "1",
                 "--format", "json"]) == 0
    with open(tmp_path / "reliability.json") as inFile:
        doc = json.load(inFile)
    assert doc["settings"]["lambda"] == 1e-5
    assert doc["settings"]["calibration"] is None
    assert len(doc["fc_tables"][0]["p_fc"]) == 4


def test_calibration_layout_must_be_selected(tmp_path):
    assert main(["reliability", "--layout", "Ham15,11", "--calibrate", "Ham31,26:500:0.7",
                 "--out", str(tmp_path), "--jobs", "1"]) == 1


def test_empty_layout_selection_fails(tmp_path):
    userConf = tmp_path / "empty.json"
    userConf.write_text(json.dumps({"config": {"campaign": {"layouts": []}}}))
    assert main(["simulate", "--config", str(userConf), "--out", str(tmp_path)]) == 1
    assert not (tmp_path / "campaign.json").exists()


def test_unknown_layout_fails(tmp_path):
    assert main(["simulate", "--layout", "Ham63,57", "--out", str(tmp_path)]) == 1


def test_report_rejects_other_json(tmp_path):
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"kind": "weather"}))
    assert main(["report", str(other)]) == 1


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        build_parser().parse_args(["simulate", "--counting", "sometimes"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["reliability", "--lambda", "1e-5", "--calibrate", "Ham31,26:500:0.7"])
    assert e.value.code == 2
