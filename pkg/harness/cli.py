"""Command-line entry point: demos, calibrate, run, report."""

import argparse
import sys
from pathlib import Path

from pydantic import ValidationError

from config import AppConfig, ExperimentConfig
from config.errors import LatencyBenchError
from debug import LogCollector, Logger
from harness.artifacts import RUN_LOG, Workspace
from harness.calibrate import cmd_calibrate
from harness.demos import cmd_demos
from harness.report import cmd_report
from harness.run import cmd_run

logger = Logger("CLI")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latbench", description="Latency-aware execution bench")
    parser.add_argument("--print-config", action="store_true", help="print the embedded default config and exit")
    sub = parser.add_subparsers(dest="command")
    for name, help_text in (
        ("demos", "record expert demonstrations and fit the normalizer"),
        ("calibrate", "measure execution and observation latency"),
        ("run", "execute the strategy x latency grid"),
        ("report", "rebuild the summary table from metrics.csv"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, default=None, help="experiment YAML")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", type=Path, default=None, help="output directory")
        p.add_argument("--check", action="store_true", help="exit 1 if a trend gate fails")
        if name in ("run", "report"):
            p.add_argument("--strategies", nargs="+", default=None)
            p.add_argument("--latencies", nargs="+", type=float, default=None, help="inference latencies in ms")
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = ExperimentConfig.load(args.config)
    data = cfg.model_dump()
    if args.seed is not None:
        data["seed"] = args.seed
    if args.out is not None:
        data["output_dir"] = str(args.out)
    if getattr(args, "strategies", None):
        data["grid"]["strategies"] = args.strategies
    if getattr(args, "latencies", None):
        data["grid"]["inference_latencies_ms"] = args.latencies
    return ExperimentConfig.model_validate(data)


def dispatch(args: argparse.Namespace, cfg: ExperimentConfig) -> int:
    ws = Workspace.of(cfg)
    match args.command:
        case "demos":
            cmd_demos(cfg)
        case "calibrate":
            cmd_calibrate(cfg)
        case "run":
            cmd_run(cfg)
            if args.check:
                return 1 if cmd_report(ws, check=True) else 0
        case "report":
            return 1 if cmd_report(ws, check=args.check) else 0
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.print_config:
        print(ExperimentConfig().dump_yaml(), end="")
        return 0
    if args.command is None:
        parser.print_help()
        return 2
    with LogCollector() as collector:
        try:
            cfg = load_config(args)
        except (LatencyBenchError, ValidationError, OSError) as e:
            logger.error(f"invalid configuration: {e}")
            return 2
        AppConfig.use(AppConfig(debug=cfg.debug, log_level=cfg.log_level))
        Logger.set_level("DEBUG" if cfg.debug else cfg.log_level)
        try:
            code = dispatch(args, cfg)
        except LatencyBenchError as e:
            logger.error(str(e))
            code = 2
    if cfg.out_path.exists():
        (cfg.out_path / RUN_LOG).write_text(collector.to_text() + "\n", encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
