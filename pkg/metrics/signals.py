"""Time-weighted signal metrics over sampled trajectories.

Signals are treated as piecewise linear between samples; timestamps must be
non-decreasing (repeated timestamps encode steps).
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config.errors import DataShapeError, EmptyInputError

Interval = tuple[float, float]


def _as_signal(t: ArrayLike, x: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if t.ndim != 1 or x.shape[0] != t.shape[0]:
        raise DataShapeError(f"signal has {x.shape[0]} samples but {t.shape[0]} timestamps")
    if np.any(np.diff(t) < 0):
        raise DataShapeError("signal timestamps must be non-decreasing")
    return t, x


def _clip(t: NDArray, x: NDArray, lo: float, hi: float) -> tuple[NDArray, NDArray]:
    inside = (t > lo) & (t < hi)
    edges = np.array([lo, hi])
    ends = np.column_stack([np.interp(edges, t, x[:, j]) for j in range(x.shape[1])])
    return np.concatenate([[lo], t[inside], [hi]]), np.vstack([ends[:1], x[inside], ends[1:]])


def _square_integral(t: NDArray, x: NDArray) -> float:
    """Exact integral of |x|^2 for piecewise-linear x"""
    a, b = x[:-1], x[1:]
    h = np.diff(t)
    return float(np.sum(h * (np.sum(a * a, axis=1) + np.sum(a * b, axis=1) + np.sum(b * b, axis=1)) / 3.0))


def rms(t: ArrayLike, x: ArrayLike, intervals: Sequence[Interval] | None = None) -> float:
    """sqrt( integral of |x|^2 over the intervals / their total length )"""
    t, x = _as_signal(t, x)
    if intervals is None:
        intervals = [(float(t[0]), float(t[-1]))]
    total, integral = 0.0, 0.0
    for lo, hi in intervals:
        lo, hi = max(lo, float(t[0])), min(hi, float(t[-1]))
        if hi <= lo:
            continue
        integral += _square_integral(*_clip(t, x, lo, hi))
        total += hi - lo
    if total <= 0.0:
        raise EmptyInputError("interval union has zero length")
    return float(np.sqrt(integral / total))


def speeds(t: ArrayLike, positions: ArrayLike) -> NDArray[np.float64]:
    """Finite-difference speed per sampling interval"""
    t, p = _as_signal(t, positions)
    if t.size < 2:
        raise DataShapeError("need at least 2 samples")
    h = np.diff(t)
    dist = np.linalg.norm(np.diff(p, axis=0), axis=1)
    return np.divide(dist, h, out=np.zeros_like(dist), where=h > 0)


def motion_split(t: ArrayLike, positions: ArrayLike, threshold: float = 1e-3) -> tuple[float, float]:
    """(idle, moving) time fractions; they sum to one"""
    t = np.asarray(t, dtype=np.float64)
    v = speeds(t, positions)
    h = np.diff(t)
    total = float(h.sum())
    if total <= 0:
        raise EmptyInputError("trajectory spans zero time")
    moving = float(h[v >= threshold].sum()) / total
    return 1.0 - moving, moving


def idle_ratio(t: ArrayLike, positions: ArrayLike, threshold: float = 1e-3) -> float:
    return motion_split(t, positions, threshold)[0]


def runs_above(t: ArrayLike, values: ArrayLike, threshold: float) -> list[Interval]:
    """Maximal spans whose samples all exceed the threshold"""
    t = np.asarray(t, dtype=np.float64)
    above = np.asarray(values, dtype=np.float64) > threshold
    spans: list[Interval] = []
    start = None
    for i, flag in enumerate(above):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            spans.append((float(t[start]), float(t[i - 1])))
            start = None
    if start is not None:
        spans.append((float(t[start]), float(t[-1])))
    return [s for s in spans if s[1] > s[0]]


@dataclass(frozen=True, slots=True)
class ContactMetrics:
    force_rms: float
    force_smoothness: float
    in_contact: bool


def contact_metrics(t: ArrayLike, forces: ArrayLike, threshold: float = 5.0) -> ContactMetrics:
    """RMS force magnitude and RMS of its time derivative over the spans above threshold.

    `forces` may be magnitudes, 3-vectors or full wrenches (force first).
    """
    t = np.asarray(t, dtype=np.float64)
    f = np.asarray(forces, dtype=np.float64)
    if t.size < 2:
        raise DataShapeError("need at least 2 samples")
    mag = f if f.ndim == 1 else np.linalg.norm(f[:, :3], axis=1)
    spans = runs_above(t, mag, threshold)
    if not spans:
        return ContactMetrics(0.0, 0.0, False)
    rate = np.gradient(mag, t)
    return ContactMetrics(rms(t, mag, spans), rms(t, rate, spans), True)


def jerk(t: ArrayLike, positions: ArrayLike) -> NDArray[np.float64]:
    t, p = _as_signal(t, positions)
    if t.size < 4:
        raise DataShapeError("jerk needs at least 4 samples")
    d = p
    for _ in range(3):
        d = np.gradient(d, t, axis=0, edge_order=2)
    return d


def motion_smoothness(t: ArrayLike, positions: ArrayLike) -> float:
    """Time-weighted RMS of the Cartesian jerk magnitude"""
    t = np.asarray(t, dtype=np.float64)
    return rms(t, np.linalg.norm(jerk(t, positions), axis=1))


def task_progress(t: ArrayLike, positions: ArrayLike, start: ArrayLike, goal: ArrayLike) -> NDArray[np.float64]:
    """(t, |p - goal| / |start - goal|) per sample"""
    t, p = _as_signal(t, positions)
    start, goal = np.asarray(start, dtype=np.float64), np.asarray(goal, dtype=np.float64)
    scale = float(np.linalg.norm(start - goal))
    if scale == 0.0:
        raise DataShapeError("start and goal coincide")
    return np.column_stack([t, np.linalg.norm(p - goal, axis=1) / scale])


def completion_time(progress: ArrayLike, fraction: float = 0.02, hold: float = 0.5) -> float | None:
    """First time the fraction drops below `fraction` and stays below for `hold` seconds"""
    progress = np.asarray(progress, dtype=np.float64)
    entered = None
    for t, frac in progress:
        if frac < fraction:
            entered = t if entered is None else entered
            if t - entered >= hold - 1e-9:
                return float(entered)
        else:
            entered = None
    return None


def motion_onset(t: ArrayLike, positions: ArrayLike, threshold: float = 1e-3) -> float:
    """Start of the first sampling interval whose speed exceeds the threshold"""
    t = np.asarray(t, dtype=np.float64)
    moving = np.nonzero(speeds(t, positions) > threshold)[0]
    return float(t[moving[0]]) if moving.size else float(t[0])
