"""Expert demonstrations: record, resample, strip idle time, fit the normalizer."""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from config import ExperimentConfig
from config.errors import ExpertFailureError
from debug import Color, Logger
from geometry import Pose
from harness.artifacts import REFERENCE_CSV, Workspace, demo_seed
from metrics import CSV_FIELDS, MetricsReport, evaluate
from policy import NORMALIZER_FILE, DemoDataset, fit_normalizer
from sensing import DemoHeader, MassModel, Observation, compensate_stream, remove_idle_segments, resample, write_demo
from simworld import InsertionWorld, ScriptedExpert, SensorStreams
from vision import SceneEncoder

logger = Logger("Demos")


@dataclass
class DemoRecording:
    seed: int
    streams: SensorStreams
    times: NDArray[np.float64]
    positions: NDArray[np.float64]
    forces: NDArray[np.float64]
    start: NDArray[np.float64]
    mass: MassModel
    sensor_offset: Pose


def record_demo(cfg: ExperimentConfig, seed: int) -> DemoRecording:
    """Run the scripted expert until it reports done, then let the plant settle"""
    world = InsertionWorld(cfg, seed, record=True)
    expert = ScriptedExpert(cfg.expert, cfg.scene, world.start, world.expert_rng(), seed)
    period = cfg.executor.command_period
    settle_until: float | None = None
    times, positions, forces = [world.now], [world.state.position], [world.state.contact.force]
    k = 0
    while settle_until is None or world.now < settle_until - 1e-9:
        t = world.now
        world.publish()
        state = world.state
        target = expert.expert_step(state.position, state.contact.force, period)
        command_ts = (k + 1) * period
        world.plant.command(target, command_ts, t)
        state = world.plant.advance(command_ts)
        k += 1
        times.append(state.t)
        positions.append(state.position)
        forces.append(state.contact.force)
        if expert.done and settle_until is None:
            settle_until = state.t + cfg.metrics.completion_hold + cfg.plant.delay + 5 * cfg.plant.tau_r
    world.publish()

    goal = np.asarray(cfg.scene.goal_position)
    miss = float(np.linalg.norm(world.state.position - goal))
    if miss > cfg.expert.goal_tolerance:
        raise ExpertFailureError(seed, f"final position {miss * 1000:.2f} mm from goal")
    return DemoRecording(
        seed,
        world.recorded,
        np.array(times),
        np.stack(positions),
        np.stack(forces),
        world.start.position,
        world.estimated_mass(),
        world.sensor_offset,
    )


def process_demo(cfg: ExperimentConfig, rec: DemoRecording, encoder: SceneEncoder) -> tuple[list[Observation], int]:
    """Synchronize raw streams on the policy grid and drop idle ticks; returns (kept, raw tick count)"""
    wrench = compensate_stream(rec.streams.wrench, rec.streams.pose, rec.mass, rec.sensor_offset)
    streams = {"pose": rec.streams.pose, "wrench": wrench, "visual": rec.streams.visual}
    raw = resample(streams, cfg.sensing.grid_hz, "interpolating", encode_visual=encoder)
    return remove_idle_segments(raw, cfg.sensing.idle_eps), len(raw)


def reference_report(cfg: ExperimentConfig, rec: DemoRecording) -> MetricsReport:
    return evaluate(rec.times, rec.positions, rec.forces, rec.start, cfg.scene.goal_position, cfg.metrics)


def write_rows(path: Path, rows: list[dict[str, object]], fields: list[str]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    return path


def cmd_demos(cfg: ExperimentConfig) -> list[Path]:
    ws = Workspace.of(cfg)
    ws.snapshot(cfg)
    calibration = ws.calibration()
    exec_latency = calibration.execution_latency if calibration else cfg.executor.delta
    obs_latency = calibration.observation_latency if calibration else cfg.sensing.camera_latency
    encoder = SceneEncoder(cfg.scene)

    n = cfg.grid.n_demos
    logger.info(f"Recording {n} expert demonstrations", Color.CYAN)
    demos, paths, reference = [], [], []
    for i in range(n):
        seed = demo_seed(cfg.seed, i)
        rec = record_demo(cfg, seed)
        kept, raw_ticks = process_demo(cfg, rec, encoder)
        header = DemoHeader(
            demo_index=i,
            seed=seed,
            grid_hz=cfg.sensing.grid_hz,
            execution_latency=exec_latency,
            observation_latency=obs_latency,
            raw_ticks=raw_ticks,
            kept_ticks=len(kept),
        )
        paths.append(write_demo(ws.demos / f"demo_{i:03d}.jsonl", header, kept))
        demos.append(kept)
        report = reference_report(cfg, rec)
        reference.append(report.to_row("expert", 0.0, seed) | {"completed": report.completed})
        logger.info(f"demo {i}: {raw_ticks} ticks, {len(kept)} kept, duration {report.duration:.2f}s")

    dataset = DemoDataset(demos, cfg.policy.horizon)
    normalizer = fit_normalizer(dataset.observations, dataset.actions, cfg.policy.q_low, cfg.policy.q_high)
    normalizer.save(ws.demos / NORMALIZER_FILE)
    write_rows(ws.file(REFERENCE_CSV), reference, CSV_FIELDS + ["completed"])
    logger.info(f"Wrote {n} demos and normalizer to {ws.demos}", Color.GREEN)
    return paths
