import json
from pathlib import Path

from pydantic import BaseModel

from config.errors import MissingArtifactError
from sensing.schema import Observation


class DemoHeader(BaseModel):
    demo_index: int
    seed: int
    grid_hz: float
    execution_latency: float
    observation_latency: float
    raw_ticks: int
    kept_ticks: int


def write_demo(path: Path, header: DemoHeader, observations: list[Observation]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps({"header": header.model_dump()})]
    lines.extend(json.dumps(obs.to_record()) for obs in observations)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_demo(path: Path) -> tuple[DemoHeader, list[Observation]]:
    if not path.exists():
        raise MissingArtifactError(f"demo file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    header = DemoHeader.model_validate(json.loads(lines[0])["header"])
    return header, [Observation.from_record(json.loads(line)) for line in lines[1:] if line]


def demo_paths(directory: Path) -> list[Path]:
    paths = sorted(directory.glob("demo_*.jsonl"))
    if not paths:
        raise MissingArtifactError(f"no demonstrations in {directory}; run `demos` first")
    return paths
