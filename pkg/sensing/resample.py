"""Multimodal stream synchronization onto the policy grid."""

import math
from collections.abc import Callable, Mapping, Sequence
from typing import Any, Literal

import numpy as np
from numpy.typing import NDArray

from config.errors import DataShapeError, EmptyInputError
from geometry import Pose, gram_schmidt, pose_to_9d
from sensing.schema import VISUAL_DIM, WRENCH_DIM, Observation, StreamSample, Wrench
from timebase import Timestamp

ResampleMode = Literal["interpolating", "last-value"]

MODALITIES = ("pose", "wrench", "visual")


def _as_vector(modality: str, value: Any) -> NDArray[np.float64]:
    if modality == "pose" and isinstance(value, Pose):
        return pose_to_9d(value)
    if modality == "wrench" and isinstance(value, Wrench):
        return value.vector()
    return np.asarray(value, dtype=np.float64)


def _timestamps(name: str, samples: Sequence[StreamSample]) -> NDArray[np.float64]:
    if not samples:
        raise EmptyInputError(f"stream '{name}' is empty")
    ts = np.array([s.timestamp for s in samples], dtype=np.float64)
    if np.any(np.diff(ts) <= 0):
        raise DataShapeError(f"stream '{name}' timestamps must be strictly increasing")
    return ts


def grid_ticks(start: Timestamp, end: Timestamp, grid_hz: float) -> NDArray[np.float64]:
    if end < start:
        return np.empty(0)
    n = math.floor((end - start) * grid_hz + 1e-9) + 1
    return start + np.arange(n) / grid_hz


def last_index(ts: NDArray[np.float64], t: Timestamp) -> int:
    """Index of the newest sample with timestamp <= t, or -1"""
    return int(np.searchsorted(ts, t, side="right")) - 1


def sample_last(samples: Sequence[StreamSample], ts: NDArray[np.float64], t: Timestamp) -> StreamSample | None:
    i = last_index(ts, t)
    return samples[i] if i >= 0 else None


def _reproject(pose9d: NDArray[np.float64]) -> NDArray[np.float64]:
    R = gram_schmidt(pose9d[3:6], pose9d[6:9])
    return np.concatenate([pose9d[:3], R[:, 0], R[:, 1]])


def resample(
    streams: Mapping[str, Sequence[StreamSample]],
    grid_hz: float,
    mode: ResampleMode = "interpolating",
    encode_visual: Callable[[Any], NDArray[np.float64]] | None = None,
) -> list[Observation]:
    """Resample per-modality streams onto a common grid inside their overlap.

    Pose and wrench are linearly interpolated in interpolating mode; the
    visual stream always takes the most recent sample, encoded lazily with
    `encode_visual` when its values are not feature vectors yet. A modality
    missing from `streams` is filled with zeros.
    """
    present = {name: streams[name] for name in MODALITIES if name in streams}
    if "pose" not in present:
        raise EmptyInputError("a pose stream is required")
    times = {name: _timestamps(name, samples) for name, samples in present.items()}
    start = max(ts[0] for ts in times.values())
    end = min(ts[-1] for ts in times.values())
    ticks = grid_ticks(start, end, grid_hz)

    dense: dict[str, NDArray[np.float64]] = {}
    for name in ("pose", "wrench"):
        if name in present:
            dense[name] = np.stack([_as_vector(name, s.value) for s in present[name]])

    observations: list[Observation] = []
    for tick in ticks:
        channels: dict[str, NDArray[np.float64]] = {}
        for name, values in dense.items():
            ts = times[name]
            if mode == "interpolating":
                vec = np.array([np.interp(tick, ts, values[:, j]) for j in range(values.shape[1])])
            else:
                vec = values[last_index(ts, tick)].copy()
            channels[name] = vec
        if mode == "interpolating":
            channels["pose"] = _reproject(channels["pose"])
        if "visual" in present:
            frame = present["visual"][last_index(times["visual"], tick)].value
            visual = encode_visual(frame) if encode_visual else np.asarray(frame, dtype=np.float64)
        else:
            visual = np.zeros(VISUAL_DIM)
        observations.append(
            Observation(
                tau_obs=float(tick),
                pose9d=channels["pose"],
                wrench=channels.get("wrench", np.zeros(WRENCH_DIM)),
                visual=visual,
            )
        )
    return observations


def remove_idle_segments(demo: Sequence[Observation], eps_pose: float) -> list[Observation]:
    """Drop ticks whose position moved less than eps_pose since the previous tick"""
    if not demo:
        return []
    kept = [demo[0]]
    for prev, cur in zip(demo, demo[1:]):
        if np.linalg.norm(cur.pose9d[:3] - prev.pose9d[:3]) >= eps_pose:
            kept.append(cur)
    return kept
