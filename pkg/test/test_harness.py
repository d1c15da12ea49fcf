import csv
from types import SimpleNamespace

import pytest

from config import AppConfig, ExperimentConfig
from debug import Logger
from harness import (
    Calibration,
    Workspace,
    check_trends,
    cmd_calibrate,
    cmd_demos,
    cmd_report,
    cmd_run,
    echo_experiment,
    main,
    ramp_experiment,
    summary_table,
)
from harness import grid
from harness.artifacts import CALIBRATION, CONFIG_SNAPSHOT, METRICS_CSV, PROGRESSION_CSV, REFERENCE_CSV, RUN_LOG, SUMMARY_CSV
from harness.report import read_rows


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    monkeypatch.delenv("LA_DEFAULT_CONFIG", raising=False)
    yield
    AppConfig.reset()
    Logger.set_level("DEBUG")


def small_config(out, **grid) -> ExperimentConfig:
    data = ExperimentConfig().model_dump()
    data["output_dir"] = str(out)
    data["grid"] |= {
        "strategies": ["latency_aware"],
        "inference_latencies_ms": [100.0],
        "rollouts_per_cell": 1,
        "demo_count": 2,
        "workers": 1,
    } | grid
    return ExperimentConfig.model_validate(data)


def row(strategy, lat, seed, duration, idle, force, fsmooth, motion, completed=True):
    return {
        "strategy": strategy,
        "inference_latency_ms": lat,
        "seed": seed,
        "duration_s": duration,
        "idle_ratio": idle,
        "contact_force_N": force,
        "force_smoothness_Nps": fsmooth,
        "motion_smoothness_mps3": motion,
        "completed": completed,
    }


def healthy_grid():
    rows = []
    for lat, blocking_idle in ((100.0, 0.3), (300.0, 0.5)):
        for seed, (d_block, d_la) in enumerate(((18.0, 13.9), (22.0, 14.1))):
            rows.append(row("blocking", lat, seed, d_block, blocking_idle, 10.0, 10.0, 3.0))
            rows.append(row("naive_async", lat, seed, 15.0, 0.02, 30.0, 60.0, 5.0))
            rows.append(row("latency_aware", lat, seed, d_la, 0.05, 10.0, 10.0, 1.0))
    reference = [row("expert", 0.0, s, 14.0, 0.0, 9.0, 8.0, 1.1) for s in range(2)]
    return rows, reference


class TestCalibration:
    @pytest.mark.parametrize("speed", [0.01, 0.02, 0.05])
    def test_ramp_recovers_delay_plus_lag(self, speed):
        assert ramp_experiment(ExperimentConfig(), speed) == pytest.approx(0.305, abs=1e-3)

    def test_echo_recovers_camera_latency(self):
        assert echo_experiment(0.082, 60.0) == pytest.approx(0.082, abs=1e-9)

    def test_zero_latency(self):
        data = ExperimentConfig().model_dump()
        data["plant"] |= {"delay": 0.0, "tau_r": 0.0}
        assert ramp_experiment(ExperimentConfig.model_validate(data), 0.02) == pytest.approx(0.0, abs=1e-9)
        assert echo_experiment(0.0, 60.0) == 0.0

    def test_cmd_calibrate_writes_artifact(self, tmp_path):
        cfg = small_config(tmp_path)
        calibration = cmd_calibrate(cfg)
        saved = Calibration.load(tmp_path / CALIBRATION)
        assert saved == calibration
        assert set(saved.ramp_latencies) == {"0.01", "0.02", "0.05"}
        assert (tmp_path / "config_snapshot.yaml").exists()


class TestReport:
    def test_summary_columns(self):
        rows, reference = healthy_grid()
        table = summary_table(rows, reference)
        assert [line["metric"] for line in table][0] == "Duration [s]"
        first = table[0]
        assert list(first)[:2] == ["metric", "Ref."]
        assert first["Ref."] == 14.0
        assert first["latency_aware@100ms"] == pytest.approx(14.0)
        assert first["blocking@300ms"] == pytest.approx(20.0)

    def test_healthy_grid_passes_gates(self):
        assert check_trends(*healthy_grid()) == []

    def test_gate_failures_are_reported(self):
        rows, reference = healthy_grid()
        for r in rows:
            if r["strategy"] == "naive_async":
                r["contact_force_N"] = 15.0
            if r["strategy"] == "blocking" and r["inference_latency_ms"] == 300.0:
                r["idle_ratio"] = 0.1
        failures = check_trends(rows, reference)
        assert any("naive force" in f for f in failures)
        assert any("does not increase" in f for f in failures)

    def test_incomplete_latency_aware_fails(self):
        rows, reference = healthy_grid()
        rows[2]["completed"] = False
        assert any("did not all complete" in f for f in check_trends(rows, reference))

    def test_missing_metrics(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            cmd_report(Workspace(tmp_path))


class TestCli:
    def test_print_config(self, capsys):
        assert main(["--print-config"]) == 0
        assert "executor:" in capsys.readouterr().out

    def test_no_command(self):
        assert main([]) == 2

    def test_unknown_strategy_is_config_error(self, tmp_path):
        assert main(["run", "--out", str(tmp_path), "--strategies", "greedy"]) == 2

    def test_run_without_demos(self, tmp_path):
        assert main(["run", "--out", str(tmp_path)]) == 2

    def test_report_without_metrics(self, tmp_path):
        tmp_path.mkdir(exist_ok=True)
        assert main(["report", "--out", str(tmp_path)]) == 2
        assert "no rollout metrics" in (tmp_path / RUN_LOG).read_text()

    def test_report_check(self, tmp_path):
        rows, reference = healthy_grid()
        fields = list(rows[0])
        for name, data in ((METRICS_CSV, rows), (REFERENCE_CSV, reference)):
            with (tmp_path / name).open("w", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=fields)
                writer.writeheader()
                writer.writerows(data)
        assert main(["report", "--out", str(tmp_path), "--check"]) == 0
        assert (tmp_path / SUMMARY_CSV).exists()

        for r in rows:
            if r["strategy"] == "naive_async":
                r["force_smoothness_Nps"] = 1.0
        with (tmp_path / METRICS_CSV).open("w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=fields)
            writer.writeheader()
            writer.writerows(rows)
        assert main(["report", "--out", str(tmp_path), "--check"]) == 1


@pytest.mark.slow
def test_end_to_end(tmp_path):
    cfg = small_config(tmp_path)
    paths = cmd_demos(cfg)
    assert len(paths) == 2
    assert (tmp_path / REFERENCE_CSV).exists()
    cmd_calibrate(cfg)
    results = cmd_run(cfg)
    assert len(results) == 1
    result = results[0]
    assert result.strategy == "latency_aware" and result.inference_latency_ms == 100.0
    assert (tmp_path / "rollouts" / "latency_aware_100ms_seed500.jsonl").exists()
    for name in (METRICS_CSV, PROGRESSION_CSV, SUMMARY_CSV):
        assert (tmp_path / name).exists()
    with (tmp_path / SUMMARY_CSV).open() as f:
        header = next(csv.reader(f))
    assert header == ["metric", "Ref.", "latency_aware@100ms"]


class TestGrid:
    def test_policy_cache_follows_policy_section(self, monkeypatch, tmp_path):
        loads = []

        def fake_load(directory, cfg):
            loads.append(cfg.k)
            return SimpleNamespace(k=cfg.k)

        monkeypatch.setattr(grid, "_POLICIES", {})
        monkeypatch.setattr(grid.KnnPolicy, "load", fake_load)
        base = small_config(tmp_path)
        wider = base.model_copy(update={"policy": base.policy.model_copy(update={"k": 9})})
        first = grid.cached_policy(str(tmp_path), base)
        assert grid.cached_policy(str(tmp_path), base) is first
        assert grid.cached_policy(str(tmp_path), wider).k == 9
        assert loads == [5, 9]


def output_files(root) -> dict[str, bytes]:
    skip = {CONFIG_SNAPSHOT, RUN_LOG}
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file() and p.name not in skip}


@pytest.mark.slow
def test_demos_are_byte_identical_across_runs(tmp_path):
    outputs = []
    for name in ("first", "second"):
        cmd_demos(small_config(tmp_path / name))
        outputs.append(output_files(tmp_path / name))
    assert any(key.startswith("demos") for key in outputs[0])
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_one_cell_run_is_byte_identical_across_runs(tmp_path):
    outputs = []
    for name in ("first", "second"):
        cfg = small_config(tmp_path / name)
        cmd_demos(cfg)
        cmd_run(cfg)
        outputs.append(output_files(tmp_path / name))
    assert "rollouts/latency_aware_100ms_seed500.jsonl" in outputs[0]
    assert METRICS_CSV in outputs[0]
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_reduced_grid_meets_trend_gates(tmp_path):
    cfg = small_config(
        tmp_path,
        strategies=["blocking", "naive_async", "latency_aware"],
        inference_latencies_ms=[100.0, 500.0],
        rollouts_per_cell=3,
        demo_count=20,
        workers=0,
    )
    cmd_demos(cfg)
    cmd_calibrate(cfg)
    cmd_run(cfg)
    rows = read_rows(tmp_path / METRICS_CSV)
    assert len(rows) == 18
    assert check_trends(rows, read_rows(tmp_path / REFERENCE_CSV)) == []
