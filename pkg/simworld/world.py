from dataclasses import dataclass, field
from typing import Any

import numpy as np

from config import ExperimentConfig
from debug import Logger
from geometry import Pose, compose
from sensing.gravity import synthesize_measurement
from sensing.schema import MassModel, StreamSample, Wrench
from simworld.contact import contact_wrench, sensor_offset_pose
from simworld.plant import PlantState, SimulatedPlant
from timebase import DelayedChannel, Duration, Timestamp

logger = Logger("World")

_RATE_EPS = 1e-9


@dataclass
class SensorStreams:
    """Everything the world published, keyed by acquisition time"""

    pose: list[StreamSample[Pose]] = field(default_factory=list)
    wrench: list[StreamSample[Wrench]] = field(default_factory=list)
    visual: list[StreamSample[Any]] = field(default_factory=list)

    def as_mapping(self) -> dict[str, list[StreamSample]]:
        return {"pose": self.pose, "wrench": self.wrench, "visual": self.visual}


@dataclass
class Delivery:
    pose: list[StreamSample[Pose]]
    wrench: list[StreamSample[Wrench]]
    visual: list[StreamSample[Any]]


class InsertionWorld:
    """Simulated cell: plant, wrist F/T sensor and eye-in-hand camera.

    Pose is published every control cycle; wrench and camera at their own
    rates. Each stream reaches consumers through a channel with its
    observation latency, stamped with its acquisition time. Camera frames
    are peg-position snapshots rendered on demand by the consumer.
    """

    def __init__(self, cfg: ExperimentConfig, seed: int = 0, record: bool = False):
        self.cfg = cfg
        self.seed = seed
        sensing = cfg.sensing
        world_seq, self.expert_seq = np.random.SeedSequence(seed).spawn(2)
        self.rng = np.random.default_rng(world_seq)

        start = np.array(cfg.scene.start_position, dtype=np.float64)
        start[:2] += self.rng.uniform(-sensing.start_jitter, sensing.start_jitter, size=2)
        self.start = Pose.from_position(start)
        self.plant = SimulatedPlant(cfg.plant, cfg.scene, self.start, cfg.executor.command_period)
        self.mass = MassModel(sensing.mass, sensing.com, sensing.gravity)
        self.sensor_offset = sensor_offset_pose(cfg.scene)

        self.pose_channel: DelayedChannel[StreamSample[Pose]] = DelayedChannel(sensing.pose_latency, "pose")
        self.wrench_channel: DelayedChannel[StreamSample[Wrench]] = DelayedChannel(sensing.wrench_latency, "wrench")
        self.camera_channel: DelayedChannel[StreamSample[Any]] = DelayedChannel(sensing.camera_latency, "camera")
        self._next_wrench: Timestamp = 0.0
        self._next_frame: Timestamp = 0.0
        self.recorded: SensorStreams | None = SensorStreams() if record else None

    @property
    def state(self) -> PlantState:
        return self.plant.state

    @property
    def now(self) -> Timestamp:
        return self.plant.state.t

    def expert_rng(self) -> np.random.Generator:
        return np.random.default_rng(self.expert_seq)

    def estimated_mass(self) -> MassModel:
        """Mass model handed to consumers, scaled by the configured miscalibration"""
        return MassModel(self.mass.mass * self.cfg.sensing.mass_error, self.mass.com, self.mass.g)

    def read_wrench(self) -> Wrench:
        st = self.state
        contact = contact_wrench(self.cfg.scene, st.pose, st.velocity)
        sensor_pose = compose(st.pose, self.sensor_offset)
        return synthesize_measurement(contact, sensor_pose, self.mass, self.cfg.sensing.wrench_noise, self.rng)

    def publish(self) -> None:
        """Acquire and send every sample due at the current time"""
        t = self.now
        st = self.state
        samples: list[tuple[DelayedChannel, StreamSample, list | None]] = []
        rec = self.recorded
        samples.append((self.pose_channel, StreamSample(t, st.pose), rec.pose if rec else None))
        if t + _RATE_EPS >= self._next_wrench:
            samples.append((self.wrench_channel, StreamSample(t, self.read_wrench()), rec.wrench if rec else None))
            self._next_wrench += 1.0 / self.cfg.sensing.wrench_hz
        if t + _RATE_EPS >= self._next_frame:
            frame = tuple(float(v) for v in st.position)
            samples.append((self.camera_channel, StreamSample(t, frame), rec.visual if rec else None))
            self._next_frame += 1.0 / self.cfg.sensing.camera_hz
        for channel, sample, log in samples:
            channel.send(sample, t)
            if log is not None:
                log.append(sample)

    def deliver(self, now: Timestamp) -> Delivery:
        return Delivery(self.pose_channel.poll(now), self.wrench_channel.poll(now), self.camera_channel.poll(now))

    def step(self, commanded: Pose | None, dt: Duration) -> PlantState:
        return self.plant.plant_step(commanded, dt)
