import json
import math

import pytest

import amfw


def test_methods_listed():
    names = amfw.methods()
    assert "amfw-hv" in names
    assert "amfw-38" in names


def test_eval_r_at_origin_and_limit():
    assert amfw.eval_r("amfw-hv", [0j]) == pytest.approx(1.0)
    r_hv = amfw.eval_r("amfw-hv", [complex(-1e9, 0.0)])
    assert r_hv.real == pytest.approx(1.0 - math.sqrt(3.0), abs=1e-5)
    r_38 = amfw.eval_r("amfw-38", [complex(-1e9, 0.0)])
    assert r_38.real == pytest.approx(1.0 / 3.0, abs=1e-5)


def test_stability_report_clean_on_orthant():
    rep = amfw.stability_report("amfw-hv", d=2, samples=500, c_trial=0.0, seed=7)
    assert rep["samples"] == 500
    assert rep["min_r_plus_1"] >= -1e-12
    assert rep["max_upper_violation"] <= 1e-12
    assert rep["satisfied_fraction"] == pytest.approx(1.0)


def test_solve_small_problem():
    out = amfw.solve("problem1", C=1.0, n=7, method="amfw-hv",
                     correction="extension", dt=0.125)
    assert out["h"] == pytest.approx(0.125)
    assert out["ge_l2"] < 0.12
    assert out["ge_max"] < 0.25
    assert len(out["values"]) == 9 ** 3


def test_presets_and_run_config():
    presets = amfw.list_presets()
    names = {p["name"] for p in presets}
    assert "table1" in names
    cfg = json.loads(next(p["config"] for p in presets if p["name"] == "table1"))
    cfg["n"] = [3, 7]
    rows = amfw.run_config(json.dumps(cfg))
    assert len(rows) == 2
    assert rows[0]["ge_l2"] > 0.0
    assert "p_l2" in rows[1]
