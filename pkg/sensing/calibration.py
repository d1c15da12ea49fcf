"""Offline latency calibration: ramp alignment for execution latency,
timestamp echo for observation latency."""

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike

from config.errors import DataShapeError, EmptyInputError, UnobservableShiftError
from timebase import Duration

MIN_SAMPLES = 10
MIN_SLOPE = 1e-6


def _fit_line(t: ArrayLike, x: ArrayLike) -> tuple[float, float]:
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if t.shape != x.shape or t.ndim != 1:
        raise DataShapeError("trajectory times and values must be 1-D and equal length")
    if t.size < MIN_SAMPLES:
        raise DataShapeError(f"need at least {MIN_SAMPLES} samples, got {t.size}")
    t_mean, x_mean = t.mean(), x.mean()
    dt = t - t_mean
    slope = float(dt @ (x - x_mean) / (dt @ dt))
    return slope, float(x_mean - slope * t_mean)


def estimate_execution_latency(
    commanded: tuple[ArrayLike, ArrayLike],
    tracked: tuple[ArrayLike, ArrayLike],
) -> Duration:
    """Time shift between two constant-velocity trajectories given as (t, x)"""
    slope_c, icpt_c = _fit_line(*commanded)
    _, icpt_t = _fit_line(*tracked)
    if abs(slope_c) < MIN_SLOPE:
        raise UnobservableShiftError(f"unobservable shift: commanded slope {slope_c:.3g} m/s")
    return (icpt_c - icpt_t) / slope_c


def estimate_observation_latency(encoded: Sequence[tuple[float, float]]) -> Duration:
    """Median of (received - emitted) over timestamp-echo samples"""
    if not encoded:
        raise EmptyInputError("no timestamp-echo samples")
    pairs = np.asarray(encoded, dtype=np.float64)
    return float(np.median(pairs[:, 1] - pairs[:, 0]))
