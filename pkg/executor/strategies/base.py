from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from config import ExecutorConfig, is_debug
from debug import Logger
from executor.buffer import ActionBuffer
from executor.schema import CycleEvent, Selection, TimedActionChunk
from geometry import Pose, pose_to_9d
from policy import ActionChunk, BasePolicy
from sensing import Observation, ObservationAssembler
from timebase import DelayedChannel, Duration, Timestamp

_START_EPS = 1e-9


@dataclass(frozen=True, eq=False, slots=True)
class InferenceResult:
    chunk: ActionChunk
    observation: Observation
    started_at: Timestamp


@dataclass(frozen=True, eq=False, slots=True)
class CycleOutcome:
    selection: Selection
    events: list[CycleEvent]


class ExecutionStrategy(ABC):
    """Executor side of the loop: owns the action buffer and the inference hand-off.

    Inference runs on the observation assembled at the start cycle and its
    result travels through a channel whose delay is the inference latency.
    """

    name: ClassVar[str]

    def __init__(
        self,
        policy: BasePolicy,
        cfg: ExecutorConfig,
        assembler: ObservationAssembler,
        inference_latency: Duration,
        start: Pose,
        delta: Duration | None = None,
    ):
        self.policy = policy
        self.cfg = cfg
        self.assembler = assembler
        self.delta = self.default_delta(cfg) if delta is None else delta
        self.buffer = ActionBuffer(start, self.replacement_blend(cfg))
        self._results: DelayedChannel[InferenceResult] = DelayedChannel(inference_latency, "inference")
        self._in_flight = False
        self._last_start: Timestamp | None = None
        self._log = Logger(self.__class__.__name__)

    @property
    def _debug(self) -> bool:
        return is_debug()

    @classmethod
    def default_delta(cls, cfg: ExecutorConfig) -> Duration:
        return 0.0

    @classmethod
    def replacement_blend(cls, cfg: ExecutorConfig) -> Duration:
        return 0.0

    @property
    def last_commanded9d(self) -> np.ndarray:
        return pose_to_9d(self.buffer.last_commanded)

    def _start_inference(self, t: Timestamp, events: list[CycleEvent]) -> None:
        obs = self.assembler.assemble()
        chunk = self.policy.infer(obs)
        self._results.send(InferenceResult(chunk, obs, t), t)
        self._in_flight = True
        self._last_start = t
        events.append("inference_start")
        if self._debug:
            self._log.debug(f"t={t:.3f} inference start (tau_obs={obs.tau_obs:.3f})")

    def _collect(self, t: Timestamp, events: list[CycleEvent]) -> None:
        for result in self._results.poll(t):
            self._in_flight = False
            self.buffer.replace(self.timestamp(result, t), t)
            events.append("inference_done")
            if self._debug:
                self._log.debug(f"t={t:.3f} chunk from {result.started_at:.3f} buffered")

    def _since_last_start(self, t: Timestamp) -> bool:
        return self._last_start is None or t - self._last_start >= self.cfg.dtau - _START_EPS

    @abstractmethod
    def timestamp(self, result: InferenceResult, arrival: Timestamp) -> TimedActionChunk:
        """Attach execution times and a base pose to a freshly arrived chunk"""
        pass

    @abstractmethod
    def wants_inference(self, t: Timestamp, command_ts: Timestamp) -> bool:
        pass

    def step(self, t: Timestamp, command_ts: Timestamp) -> CycleOutcome:
        """One command cycle at time t producing the setpoint for command_ts"""
        events: list[CycleEvent] = []
        self._collect(t, events)
        if not self._in_flight and self.assembler.ready and self.wants_inference(t, command_ts):
            self._start_inference(t, events)
            self._collect(t, events)
        selection = self.buffer.select(command_ts, self.delta)
        if selection.dropped:
            events.append("stale_drop")
        if selection.held:
            events.append("hold")
        return CycleOutcome(selection, events)
