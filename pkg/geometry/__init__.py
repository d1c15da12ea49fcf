from geometry.se3 import (
    Pose,
    Pose9D,
    adjoint,
    compose,
    gram_schmidt,
    inverse,
    pose_from_9d,
    pose_to_9d,
    skew,
    so3_exp,
    so3_log,
)

__all__ = [
    "Pose",
    "Pose9D",
    "adjoint",
    "compose",
    "gram_schmidt",
    "inverse",
    "pose_from_9d",
    "pose_to_9d",
    "skew",
    "so3_exp",
    "so3_log",
]
