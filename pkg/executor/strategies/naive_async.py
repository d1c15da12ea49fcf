from executor.buffer import timestamp_chunk
from executor.schema import TimedActionChunk
from executor.strategies.base import ExecutionStrategy, InferenceResult
from executor.strategies.manager import register_strategy
from timebase import Timestamp


@register_strategy
class NaiveAsyncStrategy(ExecutionStrategy):
    """Streams each chunk from its arrival onward, offsets applied to the current command"""

    name = "naive_async"

    def timestamp(self, result: InferenceResult, arrival: Timestamp) -> TimedActionChunk:
        return timestamp_chunk(result.chunk, arrival, self.cfg.dtau, self.last_commanded9d)

    def wants_inference(self, t: Timestamp, command_ts: Timestamp) -> bool:
        return self._since_last_start(t)
