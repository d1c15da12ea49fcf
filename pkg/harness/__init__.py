from harness.artifacts import Calibration, Workspace, demo_seed, rollout_seed
from harness.calibrate import cmd_calibrate, echo_experiment, ramp_experiment
from harness.cli import build_parser, main
from harness.demos import cmd_demos, process_demo, record_demo
from harness.grid import RolloutResult, build_grid, rollout_job
from harness.report import check_trends, cmd_report, summary_table
from harness.run import cmd_run

__all__ = [
    "Calibration",
    "RolloutResult",
    "Workspace",
    "build_grid",
    "build_parser",
    "check_trends",
    "cmd_calibrate",
    "cmd_demos",
    "cmd_report",
    "cmd_run",
    "demo_seed",
    "echo_experiment",
    "main",
    "process_demo",
    "ramp_experiment",
    "record_demo",
    "rollout_job",
    "rollout_seed",
    "summary_table",
]
