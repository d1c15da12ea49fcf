import numpy as np
from numpy.typing import ArrayLike, NDArray

from geometry import Pose, pose_from_9d

ActionChunk = NDArray[np.float64]  # (Tp, 9) relative offsets


def compute_actions(poses9d: ArrayLike, t: int, horizon: int) -> ActionChunk:
    """a_{t+i} = x_{t+i} - x_t for i = 1..horizon, repeating the final offset past the demo end"""
    poses = np.asarray(poses9d, dtype=np.float64)
    n = poses.shape[0]
    if not 0 <= t < n:
        raise IndexError(f"tick {t} outside demo of length {n}")
    idx = np.minimum(np.arange(t + 1, t + horizon + 1), n - 1)
    return poses[idx] - poses[t]


def decode_action(current: ArrayLike, offset: ArrayLike) -> Pose:
    """Add a 9D offset to the current pose and project back onto SE(3)"""
    return pose_from_9d(np.asarray(current, dtype=np.float64) + np.asarray(offset, dtype=np.float64))
