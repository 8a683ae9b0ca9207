import json

import pytest

from steklov.fuzz import FuzzConfig, fuzz, fuzz_report_text, run_trial


def test_small_run_is_clean():
    rep = fuzz(FuzzConfig(trials=30, max_vertices=20))
    assert rep["verdict"] == "pass"
    s = rep["summary"]
    assert s["violations"] == 0 and s["hypothesis_not_met"] == 0
    assert s["min_monotonicity_residual"] >= -1e-8
    assert s["max_wedge_error"] <= 1e-8


def test_weighted_trees_meet_hypotheses():
    rep = fuzz(FuzzConfig(trials=30, max_vertices=20, weighted=True, mix={"tree": 1.0}))
    assert rep["summary"]["hypothesis_not_met"] == 0
    assert rep["verdict"] == "pass"


def test_report_bytes_repeat():
    cfg = FuzzConfig(trials=15, max_vertices=15, seed=3)
    assert fuzz_report_text(cfg) == fuzz_report_text(cfg)


def test_workers_do_not_change_report():
    serial = fuzz_report_text(FuzzConfig(trials=12, max_vertices=15, seed=11))
    parallel = fuzz_report_text(FuzzConfig(trials=12, max_vertices=15, seed=11, workers=2))
    assert serial == parallel


def test_trial_depends_only_on_seed_and_index():
    cfg = FuzzConfig(trials=5, max_vertices=15, seed=5)
    assert run_trial(cfg, 3) == run_trial(cfg, 3)
    assert run_trial(cfg, 3) != run_trial(cfg, 4)


def test_planted_bug_is_caught_with_replayable_graphs():
    rep = fuzz(FuzzConfig(trials=10, max_vertices=15, planted_bug=True))
    assert rep["planted_bug"] is True
    assert rep["verdict"] == "fail"
    ce = rep["counterexamples"][0]
    assert ce["check"] == "monotonicity"
    assert {"vertices", "edges"} <= set(ce["ambient"])
    json.dumps(ce)


@pytest.mark.parametrize(
    "kwargs",
    [{"trials": -1}, {"max_vertices": 2}, {"mix": {"cycle": 1.0}}, {"mix": {"tree": 0.0}}],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        FuzzConfig(**kwargs)
