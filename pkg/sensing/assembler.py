"""Last-value observation assembly for closed-loop evaluation."""

from collections.abc import Callable, Iterable, Sequence
from typing import Any

import numpy as np
from numpy.typing import NDArray

from config.errors import EmptyInputError
from geometry import Pose, compose, pose_to_9d
from sensing.gravity import compensate
from sensing.resample import last_index
from sensing.schema import VISUAL_DIM, MassModel, Observation, StreamSample, Wrench


class ObservationAssembler:
    """Keeps the most recent sample of each modality and builds observations.

    `tau_obs` is the acquisition time of the freshest pose sample. Wrenches
    are gravity-compensated against that pose; camera frames are encoded only
    when an observation is actually assembled.
    """

    def __init__(
        self,
        mass: MassModel,
        sensor_offset: Pose = Pose.identity(),
        encode_visual: Callable[[Any], NDArray[np.float64]] | None = None,
    ):
        self.mass = mass
        self.sensor_offset = sensor_offset
        self.encode_visual = encode_visual
        self._pose: StreamSample[Pose] | None = None
        self._wrench: StreamSample[Wrench] | None = None
        self._frame: StreamSample[Any] | None = None

    @staticmethod
    def _newer(current: StreamSample | None, samples: Iterable[StreamSample]) -> StreamSample | None:
        for s in samples:
            if current is None or s.timestamp >= current.timestamp:
                current = s
        return current

    def push_poses(self, samples: Iterable[StreamSample[Pose]]) -> None:
        self._pose = self._newer(self._pose, samples)

    def push_wrenches(self, samples: Iterable[StreamSample[Wrench]]) -> None:
        self._wrench = self._newer(self._wrench, samples)

    def push_frames(self, samples: Iterable[StreamSample[Any]]) -> None:
        self._frame = self._newer(self._frame, samples)

    @property
    def ready(self) -> bool:
        return self._pose is not None

    def assemble(self) -> Observation:
        if self._pose is None:
            raise EmptyInputError("no pose sample received yet")
        tcp = self._pose.value
        if self._wrench is not None:
            sensor_pose = compose(tcp, self.sensor_offset)
            wrench = compensate(self._wrench.value, sensor_pose, self.mass).vector()
        else:
            wrench = np.zeros(6)
        if self._frame is None:
            visual = np.zeros(VISUAL_DIM)
        elif self.encode_visual is not None:
            visual = self.encode_visual(self._frame.value)
        else:
            visual = np.asarray(self._frame.value, dtype=np.float64)
        return Observation(tau_obs=self._pose.timestamp, pose9d=pose_to_9d(tcp), wrench=wrench, visual=visual)


def compensate_stream(
    wrenches: Sequence[StreamSample[Wrench]],
    poses: Sequence[StreamSample[Pose]],
    mass: MassModel,
    sensor_offset: Pose = Pose.identity(),
) -> list[StreamSample[NDArray[np.float64]]]:
    """Compensate every wrench sample against the latest pose at or before it"""
    if not poses:
        raise EmptyInputError("pose stream is empty")
    ts = np.array([p.timestamp for p in poses])
    out = []
    for w in wrenches:
        i = max(last_index(ts, w.timestamp), 0)
        sensor_pose = compose(poses[i].value, sensor_offset)
        out.append(StreamSample(w.timestamp, compensate(w.value, sensor_pose, mass).vector()))
    return out
