from metrics.report import CSV_FIELDS, PROGRESSION_HZ, MetricsReport, evaluate, evaluate_log
from metrics.signals import (
    ContactMetrics,
    completion_time,
    contact_metrics,
    idle_ratio,
    jerk,
    motion_onset,
    motion_smoothness,
    motion_split,
    rms,
    runs_above,
    speeds,
    task_progress,
)

__all__ = [
    "CSV_FIELDS",
    "PROGRESSION_HZ",
    "ContactMetrics",
    "MetricsReport",
    "completion_time",
    "contact_metrics",
    "evaluate",
    "evaluate_log",
    "idle_ratio",
    "jerk",
    "motion_onset",
    "motion_smoothness",
    "motion_split",
    "rms",
    "runs_above",
    "speeds",
    "task_progress",
]
