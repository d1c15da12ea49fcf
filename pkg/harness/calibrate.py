"""Offline latency calibration against the simulated cell."""

import numpy as np

from config import ExperimentConfig
from debug import Color, Logger
from geometry import Pose
from harness.artifacts import CALIBRATION, Calibration, Workspace
from sensing import estimate_execution_latency, estimate_observation_latency
from simworld import SimulatedPlant
from timebase import DelayedChannel, Duration, EventQueue, VirtualClock

logger = Logger("Calibrate")

RAMP_SPEEDS = (0.01, 0.02, 0.05)
RAMP_DURATION = 6.0
RAMP_SETTLE = 2.0
ECHO_DURATION = 1.0


def ramp_experiment(cfg: ExperimentConfig, speed: float, duration: float = RAMP_DURATION) -> Duration:
    """Stream a constant-velocity x ramp in free space and align command and feedback lines"""
    period = cfg.executor.command_period
    start = Pose.from_position(cfg.scene.start_position)
    plant = SimulatedPlant(cfg.plant, cfg.scene, start, period)
    n = int(round(duration / period))
    cmd_t, cmd_x, fb_t, fb_x = [], [], [], []
    for k in range(n):
        t, command_ts = k * period, (k + 1) * period
        x = start.position[0] + speed * command_ts
        plant.command(start.with_position([x, start.position[1], start.position[2]]), command_ts, t)
        state = plant.advance(command_ts)
        cmd_t.append(command_ts)
        cmd_x.append(x)
        fb_t.append(state.t)
        fb_x.append(state.position[0])
    cmd_t, cmd_x, fb_t, fb_x = map(np.asarray, (cmd_t, cmd_x, fb_t, fb_x))
    window = fb_t >= RAMP_SETTLE
    return estimate_execution_latency((cmd_t[window], cmd_x[window]), (fb_t[window], fb_x[window]))


def echo_experiment(latency: Duration, rate_hz: float, duration: float = ECHO_DURATION) -> Duration:
    """Frames carry their emission time; the receiver wakes exactly when each becomes available"""
    queue = EventQueue(VirtualClock())
    channel: DelayedChannel[float] = DelayedChannel(latency, "echo")
    n = int(round(duration * rate_hz))
    for i in range(n):
        queue.schedule(i / rate_hz, "emit")
    pairs: list[tuple[float, float]] = []
    while (event := queue.pop_next()) is not None:
        now, kind = event
        if kind == "emit":
            queue.schedule(channel.send(now, now), "receive")
        else:
            pairs.extend((emitted, now) for emitted in channel.poll(now))
    return estimate_observation_latency(pairs)


def cmd_calibrate(cfg: ExperimentConfig) -> Calibration:
    ws = Workspace.of(cfg)
    ws.snapshot(cfg)
    ramps = {f"{v:g}": ramp_experiment(cfg, v) for v in RAMP_SPEEDS}
    execution = ramps[f"{RAMP_SPEEDS[1]:g}"]
    observation = echo_experiment(cfg.sensing.camera_latency, cfg.sensing.camera_hz)
    spread = max(ramps.values()) - min(ramps.values())
    if spread > 1e-3:
        logger.warning(f"ramp latency varies by {spread * 1000:.2f} ms across speeds")
    calibration = Calibration(execution_latency=execution, observation_latency=observation, ramp_latencies=ramps)
    calibration.save(ws.file(CALIBRATION))
    logger.info(
        f"execution latency {execution * 1000:.1f} ms, observation latency {observation * 1000:.1f} ms",
        Color.GREEN,
    )
    return calibration
