import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field

from config import MetricsConfig
from executor.schema import RolloutLog
from metrics.signals import (
    completion_time,
    contact_metrics,
    idle_ratio,
    motion_onset,
    motion_smoothness,
    task_progress,
)

CSV_FIELDS = [
    "strategy",
    "inference_latency_ms",
    "seed",
    "duration_s",
    "idle_ratio",
    "contact_force_N",
    "force_smoothness_Nps",
    "motion_smoothness_mps3",
]

PROGRESSION_HZ = 10.0


class MetricsReport(BaseModel):
    duration: float = Field(ge=0.0)
    idle_ratio: float = Field(ge=0.0, le=1.0)
    contact_force_rms: float = Field(ge=0.0)
    force_smoothness: float = Field(ge=0.0)
    motion_smoothness: float = Field(ge=0.0)
    onset: float
    completion: float | None = None
    in_contact: bool = True
    progression: list[tuple[float, float]] = Field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.completion is not None

    def to_row(self, strategy: str, inference_latency_ms: float, seed: int) -> dict[str, object]:
        return {
            "strategy": strategy,
            "inference_latency_ms": inference_latency_ms,
            "seed": seed,
            "duration_s": round(self.duration, 6),
            "idle_ratio": round(self.idle_ratio, 6),
            "contact_force_N": round(self.contact_force_rms, 6),
            "force_smoothness_Nps": round(self.force_smoothness, 6),
            "motion_smoothness_mps3": round(self.motion_smoothness, 6),
        }


def evaluate(
    t: ArrayLike,
    positions: ArrayLike,
    forces: ArrayLike,
    start: ArrayLike,
    goal: ArrayLike,
    cfg: MetricsConfig = MetricsConfig(),
    completion: float | None = None,
) -> MetricsReport:
    """Metrics on the window from motion onset to task completion (or the end of the data)"""
    t = np.asarray(t, dtype=np.float64)
    positions = np.asarray(positions, dtype=np.float64)
    forces = np.asarray(forces, dtype=np.float64)
    progress = task_progress(t, positions, start, goal)
    if completion is None:
        completion = completion_time(progress, cfg.completion_fraction, cfg.completion_hold)
    onset = motion_onset(t, positions, cfg.idle_speed)
    end = completion if completion is not None else float(t[-1])
    window = (t >= onset) & (t <= end)
    if window.sum() < 4:
        window = np.ones_like(t, dtype=bool)
    tw, pw = t[window], positions[window]
    contact = contact_metrics(tw, forces[window], cfg.contact_threshold)

    ticks = np.arange(t[0], t[-1] + 1e-9, 1.0 / PROGRESSION_HZ)
    trace = np.interp(ticks, progress[:, 0], progress[:, 1])
    return MetricsReport(
        duration=max(end - onset, 0.0),
        idle_ratio=idle_ratio(tw, pw, cfg.idle_speed),
        contact_force_rms=contact.force_rms,
        force_smoothness=contact.force_smoothness,
        motion_smoothness=motion_smoothness(tw, pw),
        onset=onset,
        completion=completion,
        in_contact=contact.in_contact,
        progression=[(round(float(a), 6), float(b)) for a, b in zip(ticks, trace)],
    )


def evaluate_log(log: RolloutLog, cfg: MetricsConfig = MetricsConfig()) -> MetricsReport:
    h = log.header
    return evaluate(
        log.times(),
        log.feedback_positions(),
        log.wrenches(),
        h.start_position,
        h.goal_position,
        cfg,
        completion=h.completion_time,
    )
