from executor.buffer import ActionBuffer, select_command, timestamp_chunk
from executor.episode import CompletionTracker, run_episode
from executor.schema import (
    BufferState,
    CycleEvent,
    RolloutHeader,
    RolloutLog,
    RolloutRecord,
    Selection,
    TimedActionChunk,
)
from executor.strategies import (
    BlockingStrategy,
    ExecutionStrategy,
    LatencyAwareStrategy,
    NaiveAsyncStrategy,
    StrategyManager,
    register_strategy,
)

__all__ = [
    "ActionBuffer",
    "BlockingStrategy",
    "BufferState",
    "CompletionTracker",
    "CycleEvent",
    "ExecutionStrategy",
    "LatencyAwareStrategy",
    "NaiveAsyncStrategy",
    "RolloutHeader",
    "RolloutLog",
    "RolloutRecord",
    "Selection",
    "StrategyManager",
    "TimedActionChunk",
    "register_strategy",
    "run_episode",
]
