import os
from pathlib import Path
from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, model_validator

# Load .env file from project root or current working directory
load_dotenv()

CONFIG_DIR = Path(__file__).parent

StrategyName = Literal["blocking", "naive_async", "latency_aware"]
LogLevelName = Literal["DEBUG", "INFO", "WARN", "ERROR"]


def _get_default_config() -> Path | None:
    """Prioritize LA_DEFAULT_CONFIG env var, then the package config.yaml if present"""
    if env_path := os.getenv("LA_DEFAULT_CONFIG"):
        return Path(env_path).expanduser().resolve()
    local = CONFIG_DIR / "config.yaml"
    return local if local.exists() else None


class BaseConfig(BaseModel):
    model_config = {"extra": "forbid"}

    @classmethod
    def load(cls, path: str | Path | None = None) -> Self:
        config_path = Path(path) if path else _get_default_config()
        if config_path is None:
            return cls()
        data = yaml.safe_load(config_path.read_text(encoding="utf-8")) or {}
        return cls.model_validate(data)

    def dump_yaml(self) -> str:
        return yaml.safe_dump(self.model_dump(mode="json"), sort_keys=False)


_app_config: "AppConfig | None" = None


class AppConfig(BaseConfig):
    """Global application configuration"""

    model_config = {"extra": "ignore"}

    debug: bool = False
    log_level: LogLevelName = "INFO"

    @classmethod
    def get(cls) -> "AppConfig":
        global _app_config
        if _app_config is None:
            _app_config = cls.load()
        return _app_config

    @classmethod
    def use(cls, config: "AppConfig") -> None:
        global _app_config
        _app_config = config

    @classmethod
    def reset(cls) -> None:
        global _app_config
        _app_config = None


def is_debug() -> bool:
    """Shortcut: check if debug mode is enabled"""
    return AppConfig.get().debug


class SceneConfig(BaseConfig):
    """Slot-insertion geometry and penalty contact parameters (meters, N/m, N*s/m)"""

    slot_x_min: float = 0.28
    slot_x_max: float = 0.55
    slot_center_y: float = 0.0
    slot_width: float = 0.044
    floor_z: float = 0.10
    slot_depth: float = 0.05
    peg_length_x: float = 0.04
    peg_width: float = 0.040
    peg_height: float = 0.10
    stiffness: float = 5.0e4
    damping: float = 200.0
    friction: float = 0.4
    contact_skin: float = Field(0.01, gt=0.0)
    start_position: tuple[float, float, float] = (0.10, 0.0, 0.30)
    sensor_offset: float = 0.25
    px_per_m: float = 200.0
    camera_reference: tuple[float, float] = (0.30, 0.20)
    render_slot: bool = True
    render_peg: bool = True

    @model_validator(mode="after")
    def _check_clearance(self) -> Self:
        if self.peg_width >= self.slot_width:
            raise ValueError("peg_width must be smaller than slot_width")
        if self.slot_x_max <= self.slot_x_min:
            raise ValueError("slot_x_max must exceed slot_x_min")
        return self

    @property
    def goal_position(self) -> tuple[float, float, float]:
        return (self.slot_x_max - self.peg_length_x / 2, self.slot_center_y, self.floor_z)


class PlantConfig(BaseConfig):
    delay: float = Field(0.225, ge=0.0)
    tau_r: float = Field(0.08, ge=0.0)
    admittance_damping: float = Field(4.0e4, gt=0.0)
    substeps: int = Field(4, ge=1)


class SensingConfig(BaseConfig):
    pose_latency: float = Field(0.012, ge=0.0)
    wrench_latency: float = Field(0.017, ge=0.0)
    camera_latency: float = Field(0.082, ge=0.0)
    wrench_hz: float = Field(60.0, gt=0.0)
    camera_hz: float = Field(60.0, gt=0.0)
    grid_hz: float = Field(10.0, gt=0.0)
    idle_eps: float = Field(1e-4, ge=0.0)
    mass: float = Field(2.0, ge=0.0)
    com: tuple[float, float, float] = (0.0, 0.0, -0.10)
    gravity: float = 9.80665
    mass_error: float = Field(1.0, ge=0.0)
    wrench_noise: float = Field(0.5, ge=0.0)
    start_jitter: float = Field(0.003, ge=0.0)


class ExpertConfig(BaseConfig):
    approach_speed: float = 0.08
    descend_speed: float = 0.04
    contact_speed: float = 0.01
    slide_speed: float = 0.03
    acceleration: float = 0.2
    approach_height: float = 0.10
    entry_offset: float = 0.06
    press_depth: float = 0.0015
    force_threshold: float = 20.0
    jitter: float = Field(1.0, ge=0.0)
    goal_tolerance: float = 0.002
    timeout: float = 40.0


class PolicyConfig(BaseConfig):
    obs_horizon: int = Field(1, ge=1)
    horizon: int = Field(16, ge=1)
    k: int = Field(5, ge=1)
    q_low: float = Field(0.01, ge=0.0, le=1.0)
    q_high: float = Field(0.99, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_levels(self) -> Self:
        if self.q_low > self.q_high:
            raise ValueError("q_low must not exceed q_high")
        return self


class ExecutorConfig(BaseConfig):
    delta: float = Field(0.305, ge=0.0)
    dtau: float = Field(0.1, gt=0.0)
    command_period: float = Field(0.012, gt=0.0)
    blocking_exec_count: int = Field(8, ge=1)
    blocking_pacing: Literal["dtau", "command_period"] = "dtau"
    blend_window: float = Field(0.5, ge=0.0)
    horizon: float = Field(40.0, gt=0.0)


class MetricsConfig(BaseConfig):
    idle_speed: float = 1e-3
    contact_threshold: float = 5.0
    completion_fraction: float = 0.02
    completion_hold: float = 0.5


class GridConfig(BaseConfig):
    strategies: list[StrategyName] = ["blocking", "naive_async", "latency_aware"]
    inference_latencies_ms: list[float] = [100.0, 300.0, 500.0]
    rollouts_per_cell: int = Field(20, ge=1)
    demo_count: int | None = None
    workers: int = Field(0, ge=0)

    @property
    def n_demos(self) -> int:
        return self.demo_count or self.rollouts_per_cell


class ExperimentConfig(BaseConfig):
    """Full experiment tree; persisted verbatim next to every output"""

    debug: bool = False
    log_level: LogLevelName = "INFO"
    scene: SceneConfig = SceneConfig()
    plant: PlantConfig = PlantConfig()
    sensing: SensingConfig = SensingConfig()
    expert: ExpertConfig = ExpertConfig()
    policy: PolicyConfig = PolicyConfig()
    executor: ExecutorConfig = ExecutorConfig()
    metrics: MetricsConfig = MetricsConfig()
    grid: GridConfig = GridConfig()
    seed: int = 0
    output_dir: str = "workspace"

    @property
    def out_path(self) -> Path:
        return Path(self.output_dir)
