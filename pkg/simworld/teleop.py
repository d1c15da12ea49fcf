"""Relative-motion teleoperation mapping over recorded controller streams."""

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from pydantic import BaseModel

from config.errors import DataShapeError
from geometry import Pose, compose, inverse, so3_exp, so3_log
from timebase import Timestamp


@dataclass(frozen=True, eq=False, slots=True)
class ControllerSample:
    timestamp: Timestamp
    pose: Pose
    trigger: bool


class _ControllerRecord(BaseModel):
    t: float
    position: tuple[float, float, float]
    quat: tuple[float, float, float, float]  # w, x, y, z
    trigger: bool


def load_controller_stream(path: Path) -> list[ControllerSample]:
    """JSONL, one {t, position, quat, trigger} record per line"""
    samples = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = _ControllerRecord.model_validate(json.loads(line))
        samples.append(ControllerSample(rec.t, Pose.from_quat(rec.position, rec.quat), rec.trigger))
    if any(b.timestamp <= a.timestamp for a, b in zip(samples, samples[1:])):
        raise DataShapeError(f"controller stream {path} is not time-sorted")
    return samples


def teleop_map(
    stream: Sequence[ControllerSample], robot_ref: Pose, alpha: float = 1.0, beta: float = 1.0
) -> list[tuple[Timestamp, Pose]]:
    """Map held-trigger hand motion to robot targets relative to latched reference frames.

    On each trigger press the hand pose and the current robot target are
    latched; while held, rotation follows R_r0 exp(alpha log dR_c) and
    position follows p_r0 + beta dp_c. Releasing emits nothing and the robot
    keeps its last target until the next press re-latches.
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    targets: list[tuple[Timestamp, Pose]] = []
    robot = robot_ref
    hand_ref: Pose | None = None
    robot_latch = robot_ref
    for sample in stream:
        if not sample.trigger:
            hand_ref = None
            continue
        if hand_ref is None:
            hand_ref, robot_latch = sample.pose, robot
        delta = compose(inverse(hand_ref), sample.pose)
        rotation = robot_latch.rotation @ so3_exp(alpha * so3_log(delta.rotation))
        robot = Pose(robot_latch.position + beta * delta.position, rotation)
        targets.append((sample.timestamp, robot))
    return targets
