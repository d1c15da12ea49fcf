"""Timestamped action buffer with receding-horizon replacement.

Selection targets tau = now + delta. An entry is stale once the entry after
it is due (exec_ts <= tau); the last entry is stale once tau has passed it.
Between two live entries offsets are interpolated linearly in 9D and
projected back onto SE(3) against the chunk's base pose. Before the first
entry the command clamps to it; with nothing left the last command is held.
An optional blend window smooths the hand-over between chunks.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from executor.schema import BufferState, Selection, TimedActionChunk
from geometry import Pose, pose_from_9d, pose_to_9d
from timebase import Duration, Timestamp


def timestamp_chunk(chunk: ArrayLike, tau_obs: Timestamp, dtau: Duration, base: ArrayLike) -> TimedActionChunk:
    """Entry i (1-based) is due at tau_obs + i * dtau"""
    offsets = np.asarray(chunk, dtype=np.float64)
    steps = np.arange(1, offsets.shape[0] + 1, dtype=np.float64)
    return TimedActionChunk(
        exec_ts=tau_obs + steps * dtau,
        offsets=offsets,
        base_pose9d=np.asarray(base, dtype=np.float64).reshape(9),
        tau_obs=tau_obs,
    )


class ActionBuffer:
    """Holds the current chunk and turns it into one command per cycle.

    With `blend > 0` a replacement does not jump: the gap between the
    previous command (extrapolated to the new target time) and the new chunk,
    together with the gap in their rates, fades out along a cubic Hermite
    curve over `blend` seconds of target time.
    """

    def __init__(self, initial: Pose, blend: Duration = 0.0):
        self.last_commanded = initial
        self.blend = blend
        self._chunk: TimedActionChunk | None = None
        self._head = 0
        self._last9d = pose_to_9d(initial)
        self._last_tau: Timestamp | None = None
        self._rate = np.zeros(9)
        self._fresh = False
        self._residual: tuple[Timestamp, NDArray[np.float64], NDArray[np.float64]] | None = None

    def __len__(self) -> int:
        return 0 if self._chunk is None else len(self._chunk) - self._head

    @property
    def next_exec_ts(self) -> Timestamp | None:
        return float(self._chunk.exec_ts[self._head]) if len(self) else None

    @property
    def last_exec_ts(self) -> Timestamp | None:
        return float(self._chunk.exec_ts[-1]) if len(self) else None

    def state(self) -> BufferState:
        return BufferState(size=len(self), next_exec_ts=self.next_exec_ts)

    def replace(self, chunk: TimedActionChunk, now: Timestamp | None = None) -> None:
        """Discard whatever is buffered; feasibility is settled at selection time"""
        self._chunk = chunk
        self._head = 0
        self._fresh = True

    def clear(self) -> None:
        self._chunk = None
        self._head = 0
        self._residual = None

    def _hold(self, tau: Timestamp, dropped: int = 0) -> Selection:
        self._rate = np.zeros(9)
        self._last_tau = tau
        return Selection(self.last_commanded, tau, None, dropped)

    def _blended(self, tau: Timestamp, target: NDArray[np.float64], rate: NDArray[np.float64]) -> NDArray[np.float64]:
        if self._fresh:
            self._fresh = False
            self._residual = None
            if self.blend > 0.0 and self._last_tau is not None:
                expected = self._last9d + self._rate * (tau - self._last_tau)
                self._residual = (tau, expected - target, self._rate - rate)
        if self._residual is None:
            return target
        tau0, r0, dr0 = self._residual
        u = (tau - tau0) / self.blend
        if u >= 1.0:
            self._residual = None
            return target
        return target + (1.0 + 2.0 * u) * (1.0 - u) ** 2 * r0 + u * (1.0 - u) ** 2 * self.blend * dr0

    def select(self, now: Timestamp, delta: Duration = 0.0) -> Selection:
        tau = now + delta
        if not len(self):
            return self._hold(tau)
        chunk = self._chunk
        ts = chunk.exec_ts
        start = self._head
        while self._head + 1 < len(ts) and ts[self._head + 1] <= tau:
            self._head += 1
        if ts[self._head] < tau and self._head == len(ts) - 1:
            dropped = self._head - start + 1
            self.clear()
            return self._hold(tau, dropped)
        dropped = self._head - start
        h = self._head
        if tau <= ts[h]:
            offset, selected = chunk.offsets[h], float(ts[h])
            rate = np.zeros(9)
        else:
            w = (tau - ts[h]) / (ts[h + 1] - ts[h])
            offset, selected = (1.0 - w) * chunk.offsets[h] + w * chunk.offsets[h + 1], tau
            rate = (chunk.offsets[h + 1] - chunk.offsets[h]) / (ts[h + 1] - ts[h])
        out = self._blended(tau, chunk.base_pose9d + offset, rate)
        if self._last_tau is not None and tau > self._last_tau:
            self._rate = (out - self._last9d) / (tau - self._last_tau)
        self._last9d, self._last_tau = out, tau
        self.last_commanded = pose_from_9d(out)
        return Selection(self.last_commanded, tau, selected, dropped)


def select_command(buffer: ActionBuffer, now: Timestamp, delta: Duration = 0.0) -> Pose:
    return buffer.select(now, delta).pose
