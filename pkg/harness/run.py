import asyncio

from config import ExperimentConfig
from debug import Color, Logger
from harness.artifacts import METRICS_CSV, PROGRESSION_CSV, REFERENCE_CSV, SUMMARY_CSV, Workspace
from harness.demos import write_rows
from harness.grid import GridContext, RolloutResult, build_grid, make_pool
from harness.report import read_rows, summary_table, write_summary
from metrics import CSV_FIELDS
from sensing import demo_paths

logger = Logger("Run")


def progression_rows(results: list[RolloutResult]) -> list[dict[str, object]]:
    return [
        {"strategy": r.strategy, "inference_latency_ms": r.inference_latency_ms, "seed": r.seed, "t": t, "fraction": round(frac, 6)}
        for r in results
        for t, frac in r.report.progression
    ]


async def run_grid(cfg: ExperimentConfig, delta: float) -> list[RolloutResult]:
    pool = make_pool(cfg.grid.workers)
    ctx = GridContext(cfg=cfg, workspace=Workspace.of(cfg), delta=delta, pool=pool)
    try:
        await build_grid(cfg).run(ctx)
    finally:
        if pool is not None:
            pool.shutdown()
    return ctx.results


def cmd_run(cfg: ExperimentConfig) -> list[RolloutResult]:
    ws = Workspace.of(cfg)
    demo_paths(ws.demos)
    calibration = ws.calibration()
    delta = calibration.execution_latency if calibration else cfg.executor.delta
    grid = cfg.grid
    n = len(grid.strategies) * len(grid.inference_latencies_ms) * grid.rollouts_per_cell
    logger.info(f"Running {n} rollouts (delta {delta * 1000:.1f} ms)", Color.CYAN)

    results = asyncio.run(run_grid(cfg, delta))
    rows = [r.report.to_row(r.strategy, r.inference_latency_ms, r.seed) | {"completed": not r.timeout} for r in results]
    write_rows(ws.file(METRICS_CSV), rows, CSV_FIELDS + ["completed"])
    write_rows(ws.file(PROGRESSION_CSV), progression_rows(results), ["strategy", "inference_latency_ms", "seed", "t", "fraction"])
    ref_path = ws.file(REFERENCE_CSV)
    reference = read_rows(ref_path) if ref_path.exists() else []
    write_summary(ws.file(SUMMARY_CSV), summary_table(rows, reference))
    logger.info(f"Wrote {len(results)} rollout logs to {ws.rollouts}", Color.GREEN)
    return results
