from config.errors import LatencyBenchError
from executor.strategies.base import ExecutionStrategy


class StrategyManager:
    """Strategy registry singleton"""

    _instance: "StrategyManager | None" = None
    _strategies: dict[str, type[ExecutionStrategy]]

    def __new__(cls) -> "StrategyManager":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._strategies = {}
        return cls._instance

    def register(self, strategy: type[ExecutionStrategy]) -> None:
        if not (isinstance(strategy, type) and issubclass(strategy, ExecutionStrategy)):
            raise TypeError(f"{strategy} is not an ExecutionStrategy")
        self._strategies[strategy.name] = strategy

    def get(self, name: str) -> type[ExecutionStrategy]:
        if name not in self._strategies:
            raise LatencyBenchError(f"unknown strategy '{name}' (known: {', '.join(self.names())})")
        return self._strategies[name]

    def names(self) -> list[str]:
        return sorted(self._strategies)


def register_strategy(cls: type[ExecutionStrategy]) -> type[ExecutionStrategy]:
    """Class decorator: auto-register strategy to StrategyManager"""
    StrategyManager().register(cls)
    return cls
