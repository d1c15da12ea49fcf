from executor.strategies.base import CycleOutcome, ExecutionStrategy, InferenceResult
from executor.strategies.blocking import BlockingStrategy
from executor.strategies.latency_aware import LatencyAwareStrategy
from executor.strategies.manager import StrategyManager, register_strategy
from executor.strategies.naive_async import NaiveAsyncStrategy

__all__ = [
    "BlockingStrategy",
    "CycleOutcome",
    "ExecutionStrategy",
    "InferenceResult",
    "LatencyAwareStrategy",
    "NaiveAsyncStrategy",
    "StrategyManager",
    "register_strategy",
]
