import json

import pytest

from robineig.harness import SuiteConfig, catalog, main, replay, run_suite

SMALL = SuiteConfig(corpus=4)


def test_catalog_names_unique_and_anchored():
    cases = catalog()
    names = [c.name for c in cases]
    assert len(names) == len(set(names))
    assert all(c.anchor and c.tolerance for c in cases)


def test_filter_runs_only_matching_cases():
    summary = run_suite("perimetri", config=SMALL)
    assert [r.name for r in summary.results] == ["perimetri"]
    assert summary.ok
    assert summary.results[0].instances == 4 * 3


def test_quick_cases_pass():
    summary = run_suite("profile", config=SMALL)
    assert len(summary.results) == 4 and summary.ok


def test_deterministic_under_seed():
    a = run_suite("volumes", seed=3, config=SMALL)
    b = run_suite("volumes", seed=3, config=SMALL)
    assert a.results[0].worst_margin == b.results[0].worst_margin
    assert a.results[0].worst_label == b.results[0].worst_label


def test_fault_injection_names_case(tmp_path):
    summary = run_suite("energie", fault="energie", config=SMALL, replay_dir=str(tmp_path))
    assert summary.failed == ["energie"]
    res = summary.results[0]
    assert "flipped" in res.failure["label"]
    # shrinking reduced the hull
    assert len(res.failure["vertices"]) <= 12
    again = replay(res.replay_path)
    assert not again.passed
    assert again.worst_margin == res.failure["margin"]
    assert again.failure["detail"] == res.failure["detail"]


def test_fault_in_bound_case(tmp_path):
    summary = run_suite("ball_bound", fault="ball_bound", replay_dir=str(tmp_path))
    assert summary.failed == ["ball_bound"]


def test_replay_of_real_margin_is_bit_exact(tmp_path):
    summary = run_suite("equality_gap", replay_dir=str(tmp_path))
    res = summary.results[0]
    if res.passed:
        pytest.skip("equality_gap holds in this configuration")
    payload = json.loads(open(res.replay_path).read())
    assert replay(res.replay_path).worst_margin == payload["margin"]


def test_unknown_fault_target():
    with pytest.raises(ValueError):
        run_suite("perimetri", fault="energie", config=SMALL)


def test_command_line(capsys, tmp_path):
    assert main(["--filter", "bessel", "--workers", "1", "--replay-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3
    assert main(["--list"]) == 0
    assert main(["--filter", "energie", "--count", "2", "--fault", "energie", "--workers", "1", "--replay-dir", str(tmp_path)]) == 1
