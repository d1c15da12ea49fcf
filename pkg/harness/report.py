"""Per-cell medians as a metric x (strategy, latency) table, plus trend gates."""

import csv
from collections import defaultdict
from collections.abc import Iterable, Mapping
from pathlib import Path

import numpy as np

from config.errors import MissingArtifactError
from debug import Color, Logger
from harness.artifacts import METRICS_CSV, REFERENCE_CSV, SUMMARY_CSV, Workspace
from metrics import CSV_FIELDS

logger = Logger("Report")

METRIC_COLUMNS = {
    "duration_s": "Duration [s]",
    "idle_ratio": "Idle ratio",
    "contact_force_N": "Contact force [N]",
    "force_smoothness_Nps": "Force smoothness [N/s]",
    "motion_smoothness_mps3": "Motion smoothness [m/s^3]",
}

Row = Mapping[str, object]
Cell = tuple[str, float]


def read_rows(path: Path) -> list[dict[str, object]]:
    with path.open(newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    for row in rows:
        for key in CSV_FIELDS[1:]:
            row[key] = float(row[key])
        row["seed"] = int(row["seed"])
        if "completed" in row:
            row["completed"] = row["completed"] in ("True", "true", "1")
    return rows


def by_cell(rows: Iterable[Row]) -> dict[Cell, list[Row]]:
    cells: dict[Cell, list[Row]] = defaultdict(list)
    for row in rows:
        cells[(str(row["strategy"]), float(row["inference_latency_ms"]))].append(row)
    return dict(sorted(cells.items()))


def medians(rows: Iterable[Row]) -> dict[str, float]:
    rows = list(rows)
    return {m: float(np.median([float(r[m]) for r in rows])) for m in METRIC_COLUMNS}


def cell_name(cell: Cell) -> str:
    return f"{cell[0]}@{cell[1]:g}ms"


def summary_table(rows: Iterable[Row], reference: Iterable[Row]) -> list[dict[str, object]]:
    """One row per metric: Ref. (expert median) then one column per grid cell"""
    cells = {cell: medians(rs) for cell, rs in by_cell(rows).items()}
    ref = list(reference)
    ref_medians = medians(ref) if ref else {}
    table = []
    for metric, title in METRIC_COLUMNS.items():
        line: dict[str, object] = {"metric": title, "Ref.": round(ref_medians[metric], 6) if ref else ""}
        for cell, values in cells.items():
            line[cell_name(cell)] = round(values[metric], 6)
        table.append(line)
    return table


def write_summary(path: Path, table: list[dict[str, object]]) -> Path:
    fields = list(table[0].keys()) if table else ["metric", "Ref."]
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        writer.writerows(table)
    return path


def _completion_spread(rows: list[Row]) -> float:
    durations = [float(r["duration_s"]) for r in rows]
    return max(durations) - min(durations)


def check_trends(rows: Iterable[Row], reference: Iterable[Row]) -> list[str]:
    """Qualitative orderings expected on the default grid; returns failed gate descriptions"""
    cells = by_cell(rows)
    med = {cell: medians(rs) for cell, rs in cells.items()}
    ref = list(reference)
    ref_med = medians(ref) if ref else None
    latencies = sorted({lat for _, lat in cells})
    failures: list[str] = []

    def has(strategy: str, lat: float) -> bool:
        return (strategy, lat) in med

    blocking_idle = [med[("blocking", lat)]["idle_ratio"] for lat in latencies if has("blocking", lat)]
    if len(blocking_idle) > 1 and any(b <= a for a, b in zip(blocking_idle, blocking_idle[1:])):
        failures.append(f"blocking idle ratio does not increase with latency: {blocking_idle}")
    for lat in latencies:
        if lat >= 300 and has("blocking", lat) and has("latency_aware", lat):
            b, la = med[("blocking", lat)]["idle_ratio"], med[("latency_aware", lat)]["idle_ratio"]
            if b < 3 * la:
                failures.append(f"blocking idle {b:.3f} < 3x latency-aware {la:.3f} at {lat:g} ms")

    la_durations = [med[("latency_aware", lat)]["duration_s"] for lat in latencies if has("latency_aware", lat)]
    if la_durations:
        if (max(la_durations) - min(la_durations)) / min(la_durations) >= 0.15:
            failures.append(f"latency-aware duration varies >= 15% across latencies: {la_durations}")
        if ref_med is not None:
            ref_d = ref_med["duration_s"]
            off = [d for d in la_durations if abs(d - ref_d) > 0.3 * ref_d]
            if off:
                failures.append(f"latency-aware durations {off} outside +-30% of expert {ref_d:.2f}s")

    for lat in latencies:
        if has("naive_async", lat) and has("latency_aware", lat):
            na, la = med[("naive_async", lat)], med[("latency_aware", lat)]
            if na["contact_force_N"] < 2 * la["contact_force_N"]:
                failures.append(f"naive force {na['contact_force_N']:.1f} < 2x latency-aware at {lat:g} ms")
            if na["force_smoothness_Nps"] < 5 * la["force_smoothness_Nps"]:
                failures.append(f"naive force smoothness < 5x latency-aware at {lat:g} ms")

    if ref_med is not None:
        for lat in latencies:
            present = [s for s in ("blocking", "naive_async", "latency_aware") if has(s, lat)]
            if "latency_aware" in present and len(present) > 1:
                gap = {s: abs(med[(s, lat)]["motion_smoothness_mps3"] - ref_med["motion_smoothness_mps3"]) for s in present}
                if min(gap, key=gap.get) != "latency_aware":
                    failures.append(f"latency-aware motion smoothness is not closest to expert at {lat:g} ms")

    for lat in latencies:
        if not has("latency_aware", lat):
            continue
        la_rows = cells[("latency_aware", lat)]
        if not all(r.get("completed", True) for r in la_rows):
            failures.append(f"latency-aware rollouts did not all complete at {lat:g} ms")
        if has("blocking", lat) and _completion_spread(la_rows) >= _completion_spread(cells[("blocking", lat)]):
            failures.append(f"latency-aware completion spread not narrower than blocking at {lat:g} ms")
    return failures


def render(table: list[dict[str, object]]) -> str:
    if not table:
        return ""
    cols = list(table[0].keys())
    widths = {c: max(len(c), *(len(f"{row[c]}") for row in table)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
    lines += ["  ".join(f"{row[c]}".ljust(widths[c]) for c in cols) for row in table]
    return "\n".join(lines)


def cmd_report(workspace: Workspace, check: bool = False) -> list[str]:
    """Rebuild summary.csv from metrics.csv; with check, return failed trend gates"""
    metrics_path = workspace.file(METRICS_CSV)
    if not metrics_path.exists():
        raise MissingArtifactError(f"no rollout metrics at {metrics_path}; run the grid first")
    rows = read_rows(metrics_path)
    ref_path = workspace.file(REFERENCE_CSV)
    reference = read_rows(ref_path) if ref_path.exists() else []
    table = summary_table(rows, reference)
    write_summary(workspace.file(SUMMARY_CSV), table)
    print(render(table))
    if not check:
        return []
    failures = check_trends(rows, reference)
    for failure in failures:
        logger.warning(f"gate failed: {failure}")
    if not failures:
        logger.info("all trend gates passed", Color.GREEN)
    return failures
