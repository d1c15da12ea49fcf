from dataclasses import dataclass, field
from typing import Any, Generic, Literal, TypeVar

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config.errors import DataShapeError, FrameMismatchError
from timebase import Timestamp

POSE_DIM = 9
WRENCH_DIM = 6
VISUAL_DIM = 600
OBS_DIM = POSE_DIM + WRENCH_DIM + VISUAL_DIM

Frame = Literal["world", "sensor"]
V = TypeVar("V")


@dataclass(frozen=True, eq=False, slots=True)
class Wrench:
    """6D force/torque, ordered (force; moment)"""

    force: NDArray[np.float64]
    moment: NDArray[np.float64]
    frame: Frame = "sensor"

    def __post_init__(self) -> None:
        force = np.asarray(self.force, dtype=np.float64).reshape(3)
        moment = np.asarray(self.moment, dtype=np.float64).reshape(3)
        if not (np.all(np.isfinite(force)) and np.all(np.isfinite(moment))):
            raise DataShapeError("wrench components must be finite")
        object.__setattr__(self, "force", force)
        object.__setattr__(self, "moment", moment)

    @classmethod
    def zero(cls, frame: Frame = "sensor") -> "Wrench":
        return cls(np.zeros(3), np.zeros(3), frame)

    @classmethod
    def from_vector(cls, v: ArrayLike, frame: Frame = "sensor") -> "Wrench":
        v = np.asarray(v, dtype=np.float64).reshape(WRENCH_DIM)
        return cls(v[:3], v[3:], frame)

    def vector(self) -> NDArray[np.float64]:
        return np.concatenate([self.force, self.moment])

    def require(self, frame: Frame) -> "Wrench":
        if self.frame != frame:
            raise FrameMismatchError(f"expected {frame}-frame wrench, got {self.frame}")
        return self

    def __add__(self, other: "Wrench") -> "Wrench":
        other.require(self.frame)
        return Wrench(self.force + other.force, self.moment + other.moment, self.frame)

    def __sub__(self, other: "Wrench") -> "Wrench":
        other.require(self.frame)
        return Wrench(self.force - other.force, self.moment - other.moment, self.frame)


@dataclass(frozen=True, slots=True)
class MassModel:
    mass: float
    com: tuple[float, float, float] = (0.0, 0.0, 0.0)
    g: float = 9.80665

    def __post_init__(self) -> None:
        if self.mass < 0:
            raise ValueError("mass must be non-negative")


@dataclass(frozen=True, slots=True)
class StreamSample(Generic[V]):
    timestamp: Timestamp
    value: V


@dataclass(frozen=True, eq=False, slots=True)
class Observation:
    tau_obs: Timestamp
    pose9d: NDArray[np.float64]
    wrench: NDArray[np.float64]
    visual: NDArray[np.float64] = field(default_factory=lambda: np.zeros(VISUAL_DIM))

    def __post_init__(self) -> None:
        for name, dim in (("pose9d", POSE_DIM), ("wrench", WRENCH_DIM), ("visual", VISUAL_DIM)):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            if arr.shape != (dim,):
                raise DataShapeError(f"{name} must have shape ({dim},), got {arr.shape}")
            object.__setattr__(self, name, arr)

    def vector(self) -> NDArray[np.float64]:
        return np.concatenate([self.pose9d, self.wrench, self.visual])

    def to_record(self) -> dict[str, Any]:
        return {
            "tau_obs": self.tau_obs,
            "pose9d": self.pose9d.tolist(),
            "wrench": self.wrench.tolist(),
            "visual": self.visual.tolist(),
        }

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> "Observation":
        return cls(record["tau_obs"], record["pose9d"], record["wrench"], record["visual"])
