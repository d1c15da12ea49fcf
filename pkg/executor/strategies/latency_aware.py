from config import ExecutorConfig
from executor.buffer import timestamp_chunk
from executor.schema import TimedActionChunk
from executor.strategies.base import ExecutionStrategy, InferenceResult
from executor.strategies.manager import register_strategy
from timebase import Duration, Timestamp


@register_strategy
class LatencyAwareStrategy(ExecutionStrategy):
    """Actions are aligned to the observation time and selected at now + delta"""

    name = "latency_aware"

    @classmethod
    def default_delta(cls, cfg: ExecutorConfig) -> Duration:
        return cfg.delta

    @classmethod
    def replacement_blend(cls, cfg: ExecutorConfig) -> Duration:
        return cfg.blend_window

    def timestamp(self, result: InferenceResult, arrival: Timestamp) -> TimedActionChunk:
        obs = result.observation
        return timestamp_chunk(result.chunk, obs.tau_obs, self.cfg.dtau, obs.pose9d)

    def wants_inference(self, t: Timestamp, command_ts: Timestamp) -> bool:
        return self._since_last_start(t)
