# -*- coding: utf-8 -*-

import json

import pytest

from hamsim.campaign import Counting, Policy
from hamsim.config import Config, RunConfig, default_jobs, make_run_config, parse_calibration


def _user_file(tmp_path, groups):
    filePath = tmp_path / "user_config.json"
    filePath.write_text(json.dumps({"config": groups}))
    return str(filePath)


def test_main_config_defaults(monkeypatch):
    monkeypatch.setenv("HAMSIM_JOBS", "2")
    runConf = make_run_config(Config())
    assert (runConf.rows, runConf.cols) == (8, 32)
    assert runConf.layouts == ("Ham7,4,A", "Ham7,4,B", "Ham15,11", "Ham15,11,7,4", "Ham31,26")
    assert runConf.counting is Counting.FLIPS
    assert runConf.policy is Policy.DNC3
    assert runConf.calibrate == ("Ham31,26", 500.0, 0.7143)
    assert runConf.lam is None
    assert runConf.jobs == 2
    assert runConf.tGrid.size == 71
    runConf.validate(reliability=True)


def test_layers_in_priority_order(tmp_path):
    conf = Config(_user_file(tmp_path, {"output": {"out": "user_out", "format": "csv"}}))
    assert conf.getSetting("output", "out") == "user_out"
    assert conf.getSetting("geometry", "rows") == 8
    assert conf.getSetting("geometry", "missing", 3) == 3
    conf.setSetting("output", "out", "flag_out")
    conf.setSetting("output", "format", None)
    assert conf.getSetting("output", "out") == "flag_out"
    assert conf.getSetting("output", "format") == "csv"
    assert conf.sourceOf("output", "out") == "command line"
    assert conf.sourceOf("output", "format").endswith("user_config.json")
    assert conf.sourceOf("output", "missing") == "defaults"


def test_lambda_replaces_lower_calibration(tmp_path):
    conf = Config(_user_file(tmp_path, {"reliability": {"lambda": 1e-5}}))
    runConf = make_run_config(conf)
    assert runConf.lam == 1e-5
    assert runConf.calibrate is None


def test_list_settings(tmp_path):
    conf = Config(_user_file(tmp_path, {
        "campaign": {"layouts": "Ham31,26", "patterns": [1, 2]},
        "reliability": {"t_grid": [0, 250, 500], "calibrate": ["Ham31,26", 500, 0.7]},
    }))
    runConf = make_run_config(conf)
    assert runConf.layouts == ("Ham31,26",)
    assert runConf.patterns == (1, 2)
    assert runConf.t_grid == (0.0, 250.0, 500.0)
    assert runConf.calibrate == ("Ham31,26", 500.0, 0.7)


def test_bad_values_name_the_setting(tmp_path):
    conf = Config(_user_file(tmp_path, {"campaign": {"policy": "sometimes"}}))
    with pytest.raises(ValueError, match="campaign/policy"):
        make_run_config(conf)
    conf = Config(_user_file(tmp_path, {"geometry": {"rows": "eight"}}))
    with pytest.raises(ValueError, match="geometry/rows"):
        make_run_config(conf)


def test_zero_jobs_is_rejected(tmp_path):
    runConf = make_run_config(Config(_user_file(tmp_path, {"campaign": {"jobs": 0}})))
    assert runConf.jobs == 0
    with pytest.raises(ValueError, match="campaign/jobs"):
        runConf.validate()

    conf = Config()
    conf.setSetting("campaign", "jobs", 0)
    with pytest.raises(ValueError, match="campaign/jobs"):
        make_run_config(conf).validate()


def test_missing_and_broken_files(tmp_path):
    with pytest.raises(ValueError):
        Config(str(tmp_path / "nope.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    with pytest.raises(ValueError):
        Config(str(broken))
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps({"campaign": {}}))
    with pytest.raises(ValueError):
        Config(str(bare))


@pytest.mark.parametrize("kwargs, reliability, key", [
    (dict(layouts=()), False, "campaign/layouts"),
    (dict(format="xml"), False, "output/format"),
    (dict(physical="magic"), False, "campaign/physical"),
    (dict(jobs=0), False, "campaign/jobs"),
    (dict(catalog="/no/such/catalog.txt"), False, "campaign/catalog"),
    (dict(), True, "reliability"),
    (dict(lam=1e-5, calibrate=("Ham31,26", 500.0, 0.7)), True, "reliability"),
    (dict(lam=-1.0), True, "reliability/lambda"),
    (dict(lam=1e-5, ne=5), True, "reliability/ne"),
    (dict(lam=1e-5, words=0), True, "reliability/words"),
    (dict(lam=1e-5, t_grid="0:10"), True, "reliability/t_grid"),
])
def test_run_config_validation(kwargs, reliability, key):
    base = dict(layouts=("Ham7,4,A",))
    base.update(kwargs)
    with pytest.raises(ValueError, match=key):
        RunConfig(**base).validate(reliability=reliability)


def test_parse_calibration():
    assert parse_calibration("Ham15,11,7,4:500:0.45") == ("Ham15,11,7,4", 500.0, 0.45)
    with pytest.raises(ValueError):
        parse_calibration("Ham31,26:500")
    with pytest.raises(ValueError):
        parse_calibration("Ham31,26:soon:0.7")


def test_default_jobs(monkeypatch):
    monkeypatch.setenv("HAMSIM_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("HAMSIM_JOBS", "many")
    assert default_jobs() >= 1
    monkeypatch.delenv("HAMSIM_JOBS")
    assert default_jobs() >= 1
