import json
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from geometry import Pose
from timebase import Timestamp

CycleEvent = Literal["inference_start", "inference_done", "hold", "stale_drop"]


@dataclass(frozen=True, eq=False, slots=True)
class TimedActionChunk:
    """Relative 9D offsets, each tied to the time it should be reached"""

    exec_ts: NDArray[np.float64]  # (Tp,)
    offsets: NDArray[np.float64]  # (Tp, 9)
    base_pose9d: NDArray[np.float64]  # (9,)
    tau_obs: Timestamp

    def __len__(self) -> int:
        return len(self.exec_ts)


@dataclass(frozen=True, eq=False, slots=True)
class Selection:
    pose: Pose
    target_ts: Timestamp
    selected_ts: Timestamp | None  # None when holding
    dropped: int = 0

    @property
    def held(self) -> bool:
        return self.selected_ts is None


class BufferState(BaseModel):
    size: int
    next_exec_ts: float | None = None


class RolloutRecord(BaseModel):
    """One command cycle"""

    t: float
    command_ts: float
    commanded_pose: list[float]
    feedback_pose: list[float]
    wrench_ext: list[float]
    buffer_state: BufferState
    target_ts: float
    selected_ts: float | None = None
    events: list[CycleEvent] = Field(default_factory=list)


class RolloutHeader(BaseModel):
    strategy: str
    inference_latency_ms: float
    seed: int
    delta: float
    command_period: float
    start_position: tuple[float, float, float]
    goal_position: tuple[float, float, float]
    completion_time: float | None = None
    timeout: bool = False


class RolloutLog(BaseModel):
    header: RolloutHeader
    records: list[RolloutRecord] = Field(default_factory=list)

    def times(self) -> NDArray[np.float64]:
        return np.array([r.command_ts for r in self.records])

    def feedback_positions(self) -> NDArray[np.float64]:
        return np.array([r.feedback_pose[:3] for r in self.records])

    def commanded_positions(self) -> NDArray[np.float64]:
        return np.array([r.commanded_pose[:3] for r in self.records])

    def wrenches(self) -> NDArray[np.float64]:
        return np.array([r.wrench_ext for r in self.records])

    def write_jsonl(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [json.dumps({"header": self.header.model_dump(mode="json")})]
        lines.extend(r.model_dump_json() for r in self.records)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    @classmethod
    def read_jsonl(cls, path: Path) -> "RolloutLog":
        lines = path.read_text(encoding="utf-8").splitlines()
        header = RolloutHeader.model_validate(json.loads(lines[0])["header"])
        return cls(header=header, records=[RolloutRecord.model_validate_json(line) for line in lines[1:] if line])
