"""Experiment grid as a DAG: one node per (strategy, latency) cell fanning in to a report."""

import asyncio
import os
from concurrent.futures import Executor, ProcessPoolExecutor
from pathlib import Path

from pydantic import BaseModel, Field

from config import ExperimentConfig
from debug import Logger
from executor import run_episode
from harness.artifacts import Workspace, rollout_seed
from metrics import MetricsReport, evaluate_log
from pipeline import BaseNode, BasePipeline, NodeContext
from policy import KnnPolicy
from simworld import InsertionWorld
from vision import SceneEncoder

logger = Logger("Grid")

_POLICIES: dict[tuple[str, str], KnnPolicy] = {}
_ENCODERS: dict[str, SceneEncoder] = {}


def cached_policy(demos_dir: str, cfg: ExperimentConfig) -> KnnPolicy:
    """Policy for this process, one per demos directory and policy section"""
    key = (demos_dir, cfg.policy.model_dump_json())
    if key not in _POLICIES:
        _POLICIES[key] = KnnPolicy.load(Path(demos_dir), cfg.policy)
    return _POLICIES[key]


class RolloutResult(BaseModel):
    strategy: str
    inference_latency_ms: float
    seed: int
    timeout: bool
    report: MetricsReport
    log_path: str

    @property
    def key(self) -> tuple[str, float, int]:
        return (self.strategy, self.inference_latency_ms, self.seed)


def rollout_job(
    cfg_json: str, demos_dir: str, strategy: str, latency_ms: float, seed: int, delta: float, log_path: str
) -> RolloutResult:
    """One rollout; runs in a worker process, caching policy and encoder per process"""
    cfg = ExperimentConfig.model_validate_json(cfg_json)
    scene_key = cfg.scene.model_dump_json()
    if scene_key not in _ENCODERS:
        _ENCODERS[scene_key] = SceneEncoder(cfg.scene)
    encoder = _ENCODERS[scene_key]
    world = InsertionWorld(cfg, seed)
    delta_used = delta if strategy == "latency_aware" else None
    log = run_episode(strategy, cached_policy(demos_dir, cfg), world, latency_ms / 1000.0, cfg, delta=delta_used, encoder=encoder)
    log.write_jsonl(Path(log_path))
    return RolloutResult(
        strategy=strategy,
        inference_latency_ms=latency_ms,
        seed=seed,
        timeout=log.header.timeout,
        report=evaluate_log(log, cfg.metrics),
        log_path=log_path,
    )


class GridContext(NodeContext):
    cfg: ExperimentConfig
    workspace: Workspace
    delta: float
    pool: Executor | None = None
    results: list[RolloutResult] = Field(default_factory=list)


class CellNode(BaseNode):
    strategy: str
    latency_ms: float
    seeds: list[int]

    async def execute(self, ctx: GridContext) -> None:
        ws = ctx.workspace
        cfg_json = ctx.cfg.model_dump_json()
        args = [
            (cfg_json, str(ws.demos), self.strategy, self.latency_ms, seed, ctx.delta, str(ws.rollout_log(self.strategy, self.latency_ms, seed)))
            for seed in self.seeds
        ]
        if ctx.pool is None:
            results = [rollout_job(*a) for a in args]
        else:
            loop = asyncio.get_running_loop()
            results = await asyncio.gather(*[loop.run_in_executor(ctx.pool, rollout_job, *a) for a in args])
        ctx.results.extend(results)
        timeouts = sum(r.timeout for r in results)
        logger.info(f"{self.label}: {len(results)} rollouts done" + (f", {timeouts} timeout(s)" if timeouts else ""))


class StartNode(BaseNode):
    async def execute(self, ctx: GridContext) -> None:
        ctx.workspace.rollouts.mkdir(parents=True, exist_ok=True)
        ctx.workspace.snapshot(ctx.cfg)


class CollectNode(BaseNode):
    """Fan-in: orders results so outputs do not depend on completion order"""

    async def execute(self, ctx: GridContext) -> None:
        ctx.results.sort(key=lambda r: r.key)


def build_grid(cfg: ExperimentConfig) -> BasePipeline:
    start = StartNode(label="start")
    cells = [
        CellNode(
            label=f"{strategy}@{latency:g}ms",
            strategy=strategy,
            latency_ms=latency,
            seeds=[rollout_seed(cfg.seed, r) for r in range(cfg.grid.rollouts_per_cell)],
        )
        for strategy in cfg.grid.strategies
        for latency in cfg.grid.inference_latencies_ms
    ]
    start >> cells
    cells >> CollectNode(label="collect")
    return BasePipeline(root=start)


def make_pool(workers: int) -> Executor | None:
    """workers == 1 runs inline; 0 uses every core"""
    if workers == 1:
        return None
    return ProcessPoolExecutor(max_workers=workers or os.cpu_count())
