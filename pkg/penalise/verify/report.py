"""
Report assembly and writers for the penalise package.
"""
import csv
import json
import math
from pathlib import Path
from typing import Iterable, List, Sequence, Union

from pydantic import BaseModel

from penalise.models.config import SuiteConfig
from penalise.models.reports import CheckResult, ConvergenceRow, ReportHeader, SuiteReport
from penalise.numerics.tilting import TiltingConfig
from penalise.verify.gates import GATE_DOCUMENTATION

REPORT_JSON = "report.json"
REPORT_CSV = "report.csv"
RESOLVED_CONFIG = "resolved_config.json"
TABLE_CSV = "table.csv"

CSV_COLUMNS = [
    "check_id", "quantity", "estimate", "stderr", "target",
    "z_score", "verdict", "n_paths", "grid_dt", "seed",
]


def format_value(value: object) -> str:
    """Round-trip text for a CSV cell; floats use repr, None is empty."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def exit_code(results: Iterable[CheckResult]) -> int:
    """
    0 iff no deterministic check fails, no statistical check fails and at most
    one statistical check warns; 1 otherwise.
    """
    warned = 0
    for result in results:
        if result.verdict == "fail":
            return 1
        if result.verdict == "warn" and result.kind == "statistical":
            warned += 1
    return 0 if warned <= 1 else 1


def build_report(results: Sequence[CheckResult], config: SuiteConfig, package_version: str) -> SuiteReport:
    """
    Wrap check results with the run header.

    Args:
        results: Check results in suite order
        config: Suite configuration of the run
        package_version: penalise version

    Returns:
        SuiteReport
    """
    tilt = TiltingConfig.from_settings(config.tilt)
    header = ReportHeader(
        package_version=package_version,
        gates=GATE_DOCUMENTATION,
        truncation_mass=tilt.tail_mass(config.horizon),
        config=config,
    )
    return SuiteReport(header=header, results=list(results), exit_code=exit_code(results))


def _write_json(model: BaseModel, file_path: Path) -> Path:
    data = json.loads(model.model_dump_json())
    with open(file_path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=False)
        f.write("\n")
    return file_path


def write_report_json(report: SuiteReport, out_dir: Union[str, Path]) -> Path:
    """Write report.json into out_dir."""
    return _write_json(report, Path(out_dir) / REPORT_JSON)


def report_rows(report: SuiteReport) -> List[List[str]]:
    """One flat row per measurement of every check."""
    rows = []
    for result in report.results:
        measurements = result.details or [result]
        for m in measurements:
            quantity = getattr(m, "quantity", result.message)
            rows.append([
                format_value(v) for v in (
                    result.check_id, quantity, m.estimate, m.stderr, m.target, m.z_score,
                    m.verdict, result.n_paths, result.dt, result.seed,
                )
            ])
    return rows


def write_report_csv(report: SuiteReport, out_dir: Union[str, Path]) -> Path:
    """Write report.csv into out_dir."""
    file_path = Path(out_dir) / REPORT_CSV
    with open(file_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(report_rows(report))
    return file_path


def write_resolved_config(config: BaseModel, out_dir: Union[str, Path]) -> Path:
    """Echo the fully resolved configuration as resolved_config.json."""
    return _write_json(config, Path(out_dir) / RESOLVED_CONFIG)


def write_table_csv(rows: Sequence[ConvergenceRow], out_dir: Union[str, Path]) -> Path:
    """Write a convergence table as table.csv."""
    file_path = Path(out_dir) / TABLE_CSV
    fields = list(ConvergenceRow.model_fields)
    with open(file_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([format_value(getattr(row, name)) for name in fields])
    return file_path
