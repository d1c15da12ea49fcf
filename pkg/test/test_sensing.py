import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from config.errors import DataShapeError, EmptyInputError, FrameMismatchError, UnobservableShiftError
from geometry import Pose, adjoint, pose_to_9d, so3_exp
from sensing import (
    DemoHeader,
    MassModel,
    Observation,
    ObservationAssembler,
    StreamSample,
    Wrench,
    compensate,
    compensate_stream,
    estimate_execution_latency,
    estimate_observation_latency,
    gravity_wrench_world,
    read_demo,
    remove_idle_segments,
    resample,
    synthesize_measurement,
    wrench_to_sensor,
    wrench_to_sensor_direct,
    write_demo,
)

G = 9.80665


@pytest.fixture
def rng():
    return np.random.default_rng(3)


def random_pose(rng) -> Pose:
    return Pose(rng.uniform(-1, 1, 3), Rotation.random(random_state=rng).as_matrix())


def obs_at(t: float, x: float) -> Observation:
    return Observation(t, pose_to_9d(Pose.from_position([x, 0.0, 0.0])), np.zeros(6))


class TestGravity:
    def test_zero_mass(self):
        w = gravity_wrench_world(MassModel(0.0), Pose.identity())
        np.testing.assert_array_equal(w.vector(), np.zeros(6))

    def test_zero_lever_arm(self):
        w = gravity_wrench_world(MassModel(2.0), Pose.identity())
        np.testing.assert_allclose(w.force, [0, 0, -19.6133])
        np.testing.assert_array_equal(w.moment, np.zeros(3))

    def test_offset_com_moment(self):
        w = gravity_wrench_world(MassModel(1.0, (0.1, 0.0, 0.0)), Pose.identity())
        np.testing.assert_allclose(w.moment, [0, 0.980665, 0], atol=1e-12)

    def test_pure_gravity_reading_cancels(self, rng):
        for _ in range(100):
            pose = random_pose(rng)
            m = MassModel(rng.uniform(0.1, 5.0), tuple(rng.uniform(-0.2, 0.2, 3)))
            reading = synthesize_measurement(Wrench.zero(), pose, m)
            residual = compensate(reading, pose, m)
            assert np.linalg.norm(residual.force) < 1e-9
            assert np.linalg.norm(residual.moment) < 1e-9

    def test_contact_force_recovered(self):
        m = MassModel(2.0, (0.0, 0.0, -0.1))
        contact = Wrench([0.0, 0.0, 10.0], np.zeros(3))
        reading = synthesize_measurement(contact, Pose.identity(), m)
        np.testing.assert_allclose(compensate(reading, Pose.identity(), m).force, [0, 0, 10], atol=1e-12)

    def test_zero_mass_is_identity(self, rng):
        reading = Wrench(rng.normal(size=3), rng.normal(size=3))
        out = compensate(reading, random_pose(rng), MassModel(0.0))
        np.testing.assert_array_equal(out.vector(), reading.vector())

    def test_frame_mismatch(self):
        with pytest.raises(FrameMismatchError):
            compensate(Wrench.zero("world"), Pose.identity(), MassModel(1.0))

    def test_adjoint_path_matches_first_principles(self, rng):
        for _ in range(100):
            pose = random_pose(rng)
            w = Wrench(rng.normal(size=3), rng.normal(size=3), "world")
            np.testing.assert_allclose(
                wrench_to_sensor(w, pose).vector(), wrench_to_sensor_direct(w, pose).vector(), atol=1e-9
            )

    def test_untransposed_adjoint_disagrees(self):
        pose = Pose(np.array([0.0, 0.0, 0.5]), so3_exp([0.0, np.pi / 2, 0.0]))
        w = Wrench(np.array([0.0, 0.0, -10.0]), np.zeros(3), "world")
        literal = adjoint(pose) @ w.vector()
        assert not np.allclose(literal, wrench_to_sensor_direct(w, pose).vector())


class TestResample:
    def pose_stream(self, xs, ts):
        return [StreamSample(t, Pose.from_position([x, 0.0, 0.0])) for t, x in zip(ts, xs)]

    def test_interpolating_midpoint(self):
        obs = resample({"pose": self.pose_stream([0.0, 0.2], [0.0, 0.2])}, 10.0)
        assert [o.tau_obs for o in obs] == pytest.approx([0.0, 0.1, 0.2])
        assert obs[1].pose9d[0] == pytest.approx(0.1)

    def test_last_value_holds(self):
        obs = resample({"pose": self.pose_stream([0.0, 0.2], [0.0, 0.2])}, 10.0, mode="last-value")
        assert obs[1].pose9d[0] == 0.0

    def test_grid_count(self):
        ts = np.arange(0, 181) / 60.0
        poses = self.pose_stream(np.zeros(ts.size), ts)
        wrenches = [StreamSample(t, np.zeros(6)) for t in ts]
        obs = resample({"pose": poses, "wrench": wrenches}, 10.0)
        assert len(obs) == int(np.floor(3.0 * 10)) + 1

    def test_overlap_window(self):
        poses = self.pose_stream(np.zeros(11), np.linspace(0.0, 1.0, 11))
        wrenches = [StreamSample(t, np.zeros(6)) for t in np.linspace(0.3, 2.0, 18)]
        obs = resample({"pose": poses, "wrench": wrenches}, 10.0)
        assert obs[0].tau_obs == pytest.approx(0.3)
        assert obs[-1].tau_obs == pytest.approx(1.0)

    def test_interpolated_rotation_is_reprojected(self):
        R1 = Rotation.from_euler("z", 80, degrees=True).as_matrix()
        poses = [StreamSample(0.0, Pose.identity()), StreamSample(0.2, Pose(np.zeros(3), R1))]
        mid = resample({"pose": poses}, 10.0)[1]
        a, b = mid.pose9d[3:6], mid.pose9d[6:9]
        assert np.linalg.norm(a) == pytest.approx(1.0)
        assert a @ b == pytest.approx(0.0, abs=1e-12)

    def test_last_value_is_causal(self, rng):
        ts = np.cumsum(rng.uniform(0.01, 0.05, 60))
        xs = rng.normal(size=60)
        base = resample({"pose": self.pose_stream(xs, ts)}, 10.0, mode="last-value")
        perturbed = xs.copy()
        cut = base[len(base) // 2].tau_obs
        perturbed[ts > cut] += 5.0
        other = resample({"pose": self.pose_stream(perturbed, ts)}, 10.0, mode="last-value")
        for a, b in zip(base, other):
            if a.tau_obs <= cut:
                np.testing.assert_array_equal(a.pose9d, b.pose9d)

    def test_visual_uses_latest_frame(self):
        poses = self.pose_stream([0.0, 0.2], [0.0, 0.2])
        frames = [StreamSample(0.0, "first"), StreamSample(0.15, "second"), StreamSample(0.2, "second")]
        encode = {"first": np.zeros(600), "second": np.ones(600)}.__getitem__
        obs = resample({"pose": poses, "visual": frames}, 10.0, encode_visual=encode)
        assert obs[1].visual[0] == 0.0
        assert obs[2].visual[0] == 1.0

    def test_empty_stream(self):
        with pytest.raises(EmptyInputError):
            resample({"pose": []}, 10.0)

    def test_unsorted_stream(self):
        with pytest.raises(DataShapeError):
            resample({"pose": self.pose_stream([0.0, 0.1], [0.2, 0.1])}, 10.0)


class TestIdleRemoval:
    def test_constant_trajectory(self):
        demo = [obs_at(i * 0.1, 0.5) for i in range(30)]
        assert len(remove_idle_segments(demo, 1e-4)) == 1

    def test_pause_removed(self):
        xs = [0.01 * i for i in range(10)] + [0.09] * 20 + [0.09 + 0.01 * (i + 1) for i in range(10)]
        demo = [obs_at(i * 0.1, x) for i, x in enumerate(xs)]
        kept = remove_idle_segments(demo, 1e-4)
        assert len(kept) == 20
        assert [o.pose9d[0] for o in kept] == pytest.approx(xs[:10] + xs[30:])
        assert kept[0].tau_obs == 0.0
        assert kept[10].tau_obs == pytest.approx(3.0)

    def test_zero_eps_is_identity(self):
        demo = [obs_at(i * 0.1, 0.5) for i in range(5)]
        assert remove_idle_segments(demo, 0.0) == demo


class TestCalibration:
    def line(self, delta, n=400, slope=0.01, rate=83.0):
        t = np.arange(n) / rate
        return (t, slope * t), (t, slope * (t - delta))

    def test_exact_shift(self):
        cmd, trk = self.line(0.225)
        assert estimate_execution_latency(cmd, trk) == pytest.approx(0.225, abs=1e-12)

    def test_zero_shift(self):
        cmd, trk = self.line(0.0)
        assert estimate_execution_latency(cmd, trk) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("delta", [0.0, 0.1, 0.305, 0.5, 1.0])
    def test_exact_over_range(self, delta):
        cmd, trk = self.line(delta)
        assert estimate_execution_latency(cmd, trk) == pytest.approx(delta, abs=1e-12)

    def test_noisy_tracking(self):
        for seed in range(100):
            rng = np.random.default_rng(seed)
            cmd, (t, x) = self.line(0.225, n=int(5 * 83))
            est = estimate_execution_latency(cmd, (t, x + rng.normal(0.0, 1e-4, t.size)))
            assert abs(est - 0.225) < 0.006

    def test_flat_trajectory_unobservable(self):
        t = np.arange(20) * 0.01
        with pytest.raises(UnobservableShiftError):
            estimate_execution_latency((t, np.zeros(20)), (t, np.zeros(20)))

    def test_too_few_samples(self):
        t = np.arange(5) * 0.01
        with pytest.raises(DataShapeError):
            estimate_execution_latency((t, t), (t, t))

    def test_observation_latency(self):
        assert estimate_observation_latency([(t, t + 0.082) for t in np.arange(10) * 0.1]) == pytest.approx(0.082)
        assert estimate_observation_latency([(0.0, 0.080), (1.0, 1.082), (2.0, 2.090)]) == pytest.approx(0.082)
        assert estimate_observation_latency([(0.0, 0.010)]) == pytest.approx(0.010)

    def test_observation_latency_empty(self):
        with pytest.raises(EmptyInputError):
            estimate_observation_latency([])


class TestAssembler:
    def test_requires_pose(self):
        with pytest.raises(EmptyInputError):
            ObservationAssembler(MassModel(1.0)).assemble()

    def test_keeps_newest_and_compensates(self):
        m = MassModel(2.0, (0.0, 0.0, -0.1))
        asm = ObservationAssembler(m)
        asm.push_poses([StreamSample(0.1, Pose.from_position([0.1, 0, 0])), StreamSample(0.2, Pose.from_position([0.2, 0, 0]))])
        asm.push_poses([StreamSample(0.15, Pose.from_position([9.0, 0, 0]))])
        contact = Wrench([1.0, 0.0, 0.0], np.zeros(3))
        asm.push_wrenches([StreamSample(0.18, synthesize_measurement(contact, Pose.from_position([0.2, 0, 0]), m))])
        obs = asm.assemble()
        assert obs.tau_obs == 0.2
        assert obs.pose9d[0] == 0.2
        np.testing.assert_allclose(obs.wrench, [1, 0, 0, 0, 0, 0], atol=1e-12)
        np.testing.assert_array_equal(obs.visual, np.zeros(600))

    def test_compensate_stream(self):
        m = MassModel(1.5)
        pose = Pose.from_quat([0, 0, 0], [0.0, 1.0, 0.0, 0.0])
        poses = [StreamSample(0.0, pose)]
        wrenches = [StreamSample(0.01 * i, synthesize_measurement(Wrench.zero(), pose, m)) for i in range(5)]
        out = compensate_stream(wrenches, poses, m)
        assert len(out) == 5
        for s in out:
            np.testing.assert_allclose(s.value, np.zeros(6), atol=1e-9)


def test_observation_dimension():
    obs = obs_at(0.0, 0.0)
    assert obs.vector().shape == (615,)
    with pytest.raises(DataShapeError):
        Observation(0.0, np.zeros(9), np.zeros(6), np.zeros(599))


def test_demo_file_round_trip(tmp_path):
    header = DemoHeader(
        demo_index=0, seed=1, grid_hz=10.0, execution_latency=0.305, observation_latency=0.082, raw_ticks=3, kept_ticks=2
    )
    demo = [obs_at(0.0, 0.0), obs_at(0.1, 0.01)]
    path = write_demo(tmp_path / "demo_000.jsonl", header, demo)
    h, back = read_demo(path)
    assert h == header
    assert [o.tau_obs for o in back] == [0.0, 0.1]
    np.testing.assert_array_equal(back[1].vector(), demo[1].vector())
