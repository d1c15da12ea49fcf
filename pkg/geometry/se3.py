"""SE(3) poses, the continuous 6D rotation representation and the few Lie
operators the pipeline needs (skew, adjoint, SO(3) exp/log)."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial.transform import Rotation

from config.errors import DegenerateRotationError

Vector = NDArray[np.float64]
Pose9D = NDArray[np.float64]  # (px, py, pz, r11, r21, r31, r12, r22, r32)

_NORM_EPS = 1e-8
_PARALLEL_EPS = 1e-8


@dataclass(frozen=True, eq=False, slots=True)
class Pose:
    position: Vector
    rotation: NDArray[np.float64]

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", np.asarray(self.position, dtype=np.float64).reshape(3))
        object.__setattr__(self, "rotation", np.asarray(self.rotation, dtype=np.float64).reshape(3, 3))

    @classmethod
    def identity(cls) -> "Pose":
        return cls(np.zeros(3), np.eye(3))

    @classmethod
    def from_position(cls, position: ArrayLike, rotation: ArrayLike | None = None) -> "Pose":
        return cls(np.asarray(position, dtype=np.float64), np.eye(3) if rotation is None else rotation)

    @classmethod
    def from_quat(cls, position: ArrayLike, wxyz: ArrayLike) -> "Pose":
        """Quaternion boundary uses (w, x, y, z)"""
        w, x, y, z = np.asarray(wxyz, dtype=np.float64)
        return cls(np.asarray(position, dtype=np.float64), Rotation.from_quat([x, y, z, w]).as_matrix())

    def quat(self) -> Vector:
        x, y, z, w = Rotation.from_matrix(self.rotation).as_quat()
        return np.array([w, x, y, z])

    def matrix(self) -> NDArray[np.float64]:
        T = np.eye(4)
        T[:3, :3] = self.rotation
        T[:3, 3] = self.position
        return T

    def with_position(self, position: ArrayLike) -> "Pose":
        return Pose(np.asarray(position, dtype=np.float64), self.rotation)

    def is_valid(self, tol: float = 1e-9) -> bool:
        R = self.rotation
        return bool(np.allclose(R.T @ R, np.eye(3), atol=tol) and abs(np.linalg.det(R) - 1.0) < tol)


def compose(a: Pose, b: Pose) -> Pose:
    return Pose(a.position + a.rotation @ b.position, a.rotation @ b.rotation)


def inverse(p: Pose) -> Pose:
    Rt = p.rotation.T
    return Pose(-Rt @ p.position, Rt)


def skew(p: ArrayLike) -> NDArray[np.float64]:
    x, y, z = np.asarray(p, dtype=np.float64)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def adjoint(T: Pose) -> NDArray[np.float64]:
    """6x6 block matrix [[R, [p]R], [0, R]]"""
    R = T.rotation
    A = np.zeros((6, 6))
    A[:3, :3] = R
    A[:3, 3:] = skew(T.position) @ R
    A[3:, 3:] = R
    return A


def gram_schmidt(a1: ArrayLike, a2: ArrayLike) -> NDArray[np.float64]:
    a1 = np.asarray(a1, dtype=np.float64)
    a2 = np.asarray(a2, dtype=np.float64)
    n1, n2 = np.linalg.norm(a1), np.linalg.norm(a2)
    if n1 < _NORM_EPS or n2 < _NORM_EPS:
        raise DegenerateRotationError(f"rotation column norm below {_NORM_EPS}: {n1:.3g}, {n2:.3g}")
    b1 = a1 / n1
    if abs(b1 @ a2) / n2 > 1.0 - _PARALLEL_EPS:
        raise DegenerateRotationError("rotation columns are parallel")
    u2 = a2 - (b1 @ a2) * b1
    b2 = u2 / np.linalg.norm(u2)
    b3 = np.cross(b1, b2)
    return np.column_stack([b1, b2, b3])


def pose_to_9d(p: Pose) -> Pose9D:
    R = p.rotation
    return np.concatenate([p.position, R[:, 0], R[:, 1]])


def pose_from_9d(v: ArrayLike) -> Pose:
    v = np.asarray(v, dtype=np.float64).reshape(9)
    return Pose(v[:3].copy(), gram_schmidt(v[3:6], v[6:9]))


def so3_log(R: ArrayLike) -> Vector:
    """Rotation vector of R; the angle-pi branch is ambiguous and rejected"""
    rotvec = Rotation.from_matrix(np.asarray(R, dtype=np.float64)).as_rotvec()
    if np.linalg.norm(rotvec) > np.pi - 1e-9:
        raise DegenerateRotationError("log map undefined at rotation angle pi")
    return rotvec


def so3_exp(w: ArrayLike) -> NDArray[np.float64]:
    return Rotation.from_rotvec(np.asarray(w, dtype=np.float64)).as_matrix()
