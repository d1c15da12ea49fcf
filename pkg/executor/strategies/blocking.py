from executor.buffer import timestamp_chunk
from executor.schema import TimedActionChunk
from executor.strategies.base import ExecutionStrategy, InferenceResult
from executor.strategies.manager import register_strategy
from timebase import Timestamp


@register_strategy
class BlockingStrategy(ExecutionStrategy):
    """Serialized inference and execution.

    The robot holds while the policy computes; the first
    `blocking_exec_count` actions of the result are then played from the
    current command, paced at dtau (or at the command period), and the next
    inference starts once they are used up.
    """

    name = "blocking"

    @property
    def pacing(self) -> float:
        return self.cfg.dtau if self.cfg.blocking_pacing == "dtau" else self.cfg.command_period

    def timestamp(self, result: InferenceResult, arrival: Timestamp) -> TimedActionChunk:
        chunk = result.chunk[: self.cfg.blocking_exec_count]
        return timestamp_chunk(chunk, arrival, self.pacing, self.last_commanded9d)

    def wants_inference(self, t: Timestamp, command_ts: Timestamp) -> bool:
        last = self.buffer.last_exec_ts
        return last is None or last < command_ts + self.delta
