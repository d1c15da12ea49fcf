from config.base import (
    AppConfig,
    BaseConfig,
    ExecutorConfig,
    ExperimentConfig,
    ExpertConfig,
    GridConfig,
    MetricsConfig,
    PlantConfig,
    PolicyConfig,
    SceneConfig,
    SensingConfig,
    is_debug,
)

__all__ = [
    "AppConfig",
    "BaseConfig",
    "ExecutorConfig",
    "ExperimentConfig",
    "ExpertConfig",
    "GridConfig",
    "MetricsConfig",
    "PlantConfig",
    "PolicyConfig",
    "SceneConfig",
    "SensingConfig",
    "is_debug",
]
