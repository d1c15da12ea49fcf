"""File layout of an experiment output directory."""

from pathlib import Path

from pydantic import BaseModel

from config import ExperimentConfig
from config.errors import MissingArtifactError

CONFIG_SNAPSHOT = "config_snapshot.yaml"
CALIBRATION = "calibration.json"
REFERENCE_CSV = "reference.csv"
METRICS_CSV = "metrics.csv"
SUMMARY_CSV = "summary.csv"
PROGRESSION_CSV = "progression.csv"
RUN_LOG = "run.log"


class Calibration(BaseModel):
    execution_latency: float
    observation_latency: float
    ramp_latencies: dict[str, float] = {}

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=1), encoding="utf-8")
        return path

    @classmethod
    def load(cls, path: Path) -> "Calibration":
        if not path.exists():
            raise MissingArtifactError(f"calibration not found: {path}")
        return cls.model_validate_json(path.read_text(encoding="utf-8"))


class Workspace:
    def __init__(self, root: Path):
        self.root = Path(root)

    @classmethod
    def of(cls, cfg: ExperimentConfig) -> "Workspace":
        return cls(cfg.out_path)

    @property
    def demos(self) -> Path:
        return self.root / "demos"

    @property
    def rollouts(self) -> Path:
        return self.root / "rollouts"

    def file(self, name: str) -> Path:
        return self.root / name

    def rollout_log(self, strategy: str, latency_ms: float, seed: int) -> Path:
        return self.rollouts / f"{strategy}_{latency_ms:g}ms_seed{seed}.jsonl"

    def snapshot(self, cfg: ExperimentConfig) -> Path:
        path = self.file(CONFIG_SNAPSHOT)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(cfg.dump_yaml(), encoding="utf-8")
        return path

    def calibration(self) -> Calibration | None:
        path = self.file(CALIBRATION)
        return Calibration.load(path) if path.exists() else None


def demo_seed(base: int, index: int) -> int:
    return base * 1000 + index


def rollout_seed(base: int, index: int) -> int:
    return base * 1000 + 500 + index
