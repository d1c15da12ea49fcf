import numpy as np
import pytest

from config import ExperimentConfig
from config.errors import LatencyBenchError
from executor import ActionBuffer, RolloutLog, StrategyManager, run_episode, select_command, timestamp_chunk
from geometry import Pose, pose_to_9d
from policy import BasePolicy
from sensing import Observation, estimate_execution_latency
from simworld import InsertionWorld
from timebase import WallClock
from vision import SceneEncoder


class ConstantVelocityPolicy(BasePolicy):
    """Offsets of a straight-line move at `velocity`, one entry per dtau"""

    def __init__(self, velocity, horizon: int = 16, dtau: float = 0.1):
        self.velocity = np.asarray(velocity, dtype=np.float64)
        self.horizon = horizon
        self.dtau = dtau
        self.calls: list[float] = []

    def infer(self, obs: Observation) -> np.ndarray:
        self.calls.append(obs.tau_obs)
        chunk = np.zeros((self.horizon, 9))
        chunk[:, :3] = np.outer(np.arange(1, self.horizon + 1) * self.dtau, self.velocity)
        return chunk


class FlippingBiasPolicy(ConstantVelocityPolicy):
    """Constant velocity, but consecutive chunks disagree by 1 cm along x"""

    def infer(self, obs: Observation) -> np.ndarray:
        chunk = super().infer(obs)
        chunk[:, 0] += 0.005 if len(self.calls) % 2 else -0.005
        return chunk


def make_cfg(**sections) -> ExperimentConfig:
    data = ExperimentConfig().model_dump()
    for name, values in sections.items():
        data[name].update(values)
    return ExperimentConfig.model_validate(data)


def chunk_x(values) -> np.ndarray:
    chunk = np.zeros((len(values), 9))
    chunk[:, 0] = values
    return chunk


@pytest.fixture(scope="module")
def encoder():
    return SceneEncoder(ExperimentConfig().scene)


class TestTimestamping:
    def test_entries_follow_observation_time(self):
        timed = timestamp_chunk(np.zeros((16, 9)), 2.0, 0.1, np.zeros(9))
        np.testing.assert_allclose(timed.exec_ts, 2.0 + 0.1 * np.arange(1, 17))
        assert timed.exec_ts[-1] == pytest.approx(3.6)

    def test_single_entry(self):
        timed = timestamp_chunk(np.zeros((1, 9)), 0.5, 0.1, np.zeros(9))
        assert len(timed) == 1
        assert timed.exec_ts[0] == pytest.approx(0.6)

    def test_spacing(self):
        timed = timestamp_chunk(np.zeros((8, 9)), 0.0, 0.1, np.zeros(9))
        np.testing.assert_allclose(np.diff(timed.exec_ts), 0.1, atol=1e-15)


class TestSelection:
    base = pose_to_9d(Pose.identity())

    def test_midpoint_interpolation(self):
        buf = ActionBuffer(Pose.identity())
        buf.replace(timestamp_chunk(chunk_x([0.0, 0.02]), 2.0, 0.1, self.base))
        sel = buf.select(2.05, 0.1)
        assert sel.pose.position[0] == pytest.approx(0.01)
        assert sel.selected_ts == pytest.approx(2.15)
        assert not sel.held

    def test_empty_buffer_holds(self):
        start = Pose.from_position([0.1, 0.2, 0.3])
        buf = ActionBuffer(start)
        sel = buf.select(1.0, 0.3)
        assert sel.held
        assert sel.pose is start

    def test_exhausted_buffer_is_stale_and_holds(self):
        buf = ActionBuffer(Pose.identity())
        buf.replace(timestamp_chunk(chunk_x(np.linspace(0.01, 0.16, 16)), 2.0, 0.1, self.base))
        last = buf.select(3.55, 0.0).pose
        sel = buf.select(3.4, 0.3)
        assert sel.held and sel.dropped == 2
        assert sel.pose is last
        assert len(buf) == 0

    def test_clamps_before_first_entry(self):
        buf = ActionBuffer(Pose.identity())
        buf.replace(timestamp_chunk(chunk_x([0.05, 0.06]), 1.0, 0.1, self.base))
        sel = buf.select(0.5, 0.1)
        assert sel.pose.position[0] == pytest.approx(0.05)
        assert sel.selected_ts == pytest.approx(1.1)

    def test_replace_discards_previous(self):
        buf = ActionBuffer(Pose.identity())
        buf.replace(timestamp_chunk(chunk_x([0.1, 0.2]), 0.0, 0.1, self.base))
        buf.replace(timestamp_chunk(chunk_x([0.5, 0.6]), 0.0, 0.1, self.base))
        assert select_command(buf, 0.1).position[0] == pytest.approx(0.5)

    def test_replace_with_past_chunk_holds(self):
        start = Pose.from_position([0.3, 0.0, 0.0])
        buf = ActionBuffer(start)
        buf.replace(timestamp_chunk(chunk_x([0.1, 0.2]), 0.0, 0.1, self.base))
        sel = buf.select(1.0, 0.3)
        assert sel.held
        assert sel.pose is start

    def test_drops_passed_entries(self):
        buf = ActionBuffer(Pose.identity())
        buf.replace(timestamp_chunk(chunk_x(np.arange(1, 9) * 0.01), 0.0, 0.1, self.base))
        sel = buf.select(0.4, 0.05)
        assert sel.dropped == 3
        assert buf.next_exec_ts == pytest.approx(0.4)
        assert sel.pose.position[0] == pytest.approx(0.045)

    def test_offsets_apply_to_chunk_base(self):
        base = pose_to_9d(Pose.from_position([1.0, 2.0, 3.0]))
        buf = ActionBuffer(Pose.identity())
        buf.replace(timestamp_chunk(chunk_x([0.1]), 0.0, 0.1, base))
        np.testing.assert_allclose(buf.select(0.1).pose.position, [1.1, 2.0, 3.0])

    def test_replacement_blends_from_last_command(self):
        buf = ActionBuffer(Pose.identity(), blend=0.3)
        ramp = 0.01 * np.arange(1, 17)
        buf.replace(timestamp_chunk(chunk_x(ramp), 0.0, 0.1, self.base))
        xs = [buf.select(k * 0.012).pose.position[0] for k in range(10, 40)]
        buf.replace(timestamp_chunk(chunk_x(ramp + 0.02), 0.0, 0.1, self.base))
        xs += [buf.select(k * 0.012).pose.position[0] for k in range(40, 100)]
        steps = np.diff(xs)
        assert steps[29] == pytest.approx(0.1 * 0.012)
        assert steps.max() < 0.0025
        assert xs[-1] == pytest.approx(0.02 + 0.1 * 99 * 0.012)

    def test_without_blend_replacement_jumps(self):
        buf = ActionBuffer(Pose.identity())
        ramp = 0.01 * np.arange(1, 17)
        buf.replace(timestamp_chunk(chunk_x(ramp), 0.0, 0.1, self.base))
        before = buf.select(0.468).pose.position[0]
        buf.replace(timestamp_chunk(chunk_x(ramp + 0.02), 0.0, 0.1, self.base))
        assert buf.select(0.48).pose.position[0] - before == pytest.approx(0.0212)

    def test_blend_keeps_target_time_rules(self):
        buf = ActionBuffer(Pose.identity(), blend=0.3)
        buf.replace(timestamp_chunk(chunk_x(np.arange(1, 9) * 0.01), 0.0, 0.1, self.base))
        buf.select(0.0, 0.05)
        buf.replace(timestamp_chunk(chunk_x(np.arange(1, 9) * 0.01 + 0.05), 0.0, 0.1, self.base))
        sel = buf.select(0.4, 0.05)
        assert sel.dropped == 3
        assert sel.selected_ts == pytest.approx(0.45)
        assert buf.next_exec_ts == pytest.approx(0.4)


class TestRegistry:
    def test_three_strategies(self):
        assert StrategyManager().names() == ["blocking", "latency_aware", "naive_async"]

    def test_unknown(self):
        with pytest.raises(LatencyBenchError):
            StrategyManager().get("teleport")


class TestEpisode:
    def test_zero_latency_strategies_coincide(self, encoder):
        cfg = make_cfg(
            plant={"delay": 0.0, "tau_r": 0.0},
            sensing={"pose_latency": 0.0, "wrench_latency": 0.0, "camera_latency": 0.0},
            executor={"horizon": 2.0, "blend_window": 0.0},
        )
        logs = {}
        for name in ("latency_aware", "naive_async"):
            policy = ConstantVelocityPolicy([0.02, 0.0, 0.0])
            logs[name] = run_episode(name, policy, InsertionWorld(cfg, seed=3), 0.0, cfg, delta=0.0, encoder=encoder)
        a, b = logs["latency_aware"].records, logs["naive_async"].records
        assert len(a) == len(b) > 100
        for ra, rb in zip(a, b):
            assert ra.commanded_pose == rb.commanded_pose

    def test_latency_aware_hand_over_is_continuous(self, encoder):
        cfg = make_cfg(executor={"horizon": 4.0}, sensing={"wrench_noise": 0.0})
        log = run_episode("latency_aware", FlippingBiasPolicy([0.02, 0, 0]), InsertionWorld(cfg, seed=6), 0.3, cfg, encoder=encoder)
        steps = np.linalg.norm(np.diff(log.commanded_positions(), axis=0), axis=1)
        assert sum("inference_done" in r.events for r in log.records) > 5
        assert steps.max() < 0.0025

    def test_wall_clock_paces_the_loop(self, encoder):
        cfg = make_cfg(executor={"horizon": 0.24})
        clock = WallClock()
        log = run_episode("naive_async", ConstantVelocityPolicy([0.02, 0, 0]), InsertionWorld(cfg), 0.1, cfg, encoder=encoder, clock=clock)
        assert len(log.records) == 20
        assert clock.now >= 0.24
        np.testing.assert_allclose(log.times(), 0.012 * np.arange(1, 21), atol=1e-12)

    def test_commands_every_period(self, encoder):
        cfg = make_cfg(executor={"horizon": 2.0})
        for name in StrategyManager().names():
            log = run_episode(name, ConstantVelocityPolicy([0.02, 0, 0]), InsertionWorld(cfg, seed=1), 0.3, cfg, encoder=encoder)
            np.testing.assert_allclose(np.diff(log.times()), cfg.executor.command_period, atol=1e-9)
            assert log.header.timeout

    def test_latency_aware_never_selects_stale_entries(self, encoder):
        cfg = make_cfg(executor={"horizon": 3.0})
        log = run_episode("latency_aware", ConstantVelocityPolicy([0.02, 0, 0]), InsertionWorld(cfg, seed=2), 0.3, cfg, encoder=encoder)
        selected = [r for r in log.records if r.selected_ts is not None]
        assert selected
        for r in selected:
            assert r.target_ts == pytest.approx(r.command_ts + cfg.executor.delta)
            assert r.selected_ts >= r.target_ts - 1e-12
        ts = [r.selected_ts for r in selected]
        assert all(b >= a for a, b in zip(ts, ts[1:]))

    def test_blocking_holds_during_inference(self, encoder):
        cfg = make_cfg(executor={"horizon": 3.0})
        policy = ConstantVelocityPolicy([0.02, 0, 0])
        log = run_episode("blocking", policy, InsertionWorld(cfg, seed=4), 0.5, cfg, encoder=encoder)
        in_flight = False
        for r in log.records:
            if "inference_done" in r.events:
                in_flight = False
            if "inference_start" in r.events:
                assert not in_flight
                in_flight = True
            if in_flight:
                assert "hold" in r.events
        starts = [r.t for r in log.records if "inference_start" in r.events]
        # 0.5 s inference plus 8 actions at dtau
        assert np.diff(starts) == pytest.approx(np.full(len(starts) - 1, 1.3), abs=0.025)

    def test_shift_matches_plant_latency(self, encoder):
        cfg = make_cfg(executor={"horizon": 6.0}, sensing={"wrench_noise": 0.0})
        log = run_episode("latency_aware", ConstantVelocityPolicy([0.01, 0, 0]), InsertionWorld(cfg, seed=5), 0.1, cfg, encoder=encoder)
        t = log.times()
        window = (t > 2.5) & (t < 5.5)
        shift = estimate_execution_latency(
            (t[window], log.commanded_positions()[window, 0]),
            (t[window], log.feedback_positions()[window, 0]),
        )
        assert abs(shift - (cfg.plant.delay + cfg.plant.tau_r)) < cfg.executor.command_period / 2

    def test_log_round_trip(self, tmp_path, encoder):
        cfg = make_cfg(executor={"horizon": 0.5})
        log = run_episode("naive_async", ConstantVelocityPolicy([0.02, 0, 0]), InsertionWorld(cfg, seed=0), 0.1, cfg, encoder=encoder)
        back = RolloutLog.read_jsonl(log.write_jsonl(tmp_path / "rollout.jsonl"))
        assert back.header == log.header
        assert back.records == log.records
