"""
Verification suite for the penalise package.
"""
from penalise.verify.checks import (
    CHECKS,
    DEFAULT_CHECKS,
    EXTRA_CHECKS,
    CheckSpec,
    resolve_checks,
    run_check,
)
from penalise.verify.report import (
    build_report,
    exit_code,
    write_report_csv,
    write_report_json,
    write_resolved_config,
    write_table_csv,
)
from penalise.verify.tables import convergence_table

__all__ = [
    "CHECKS",
    "DEFAULT_CHECKS",
    "EXTRA_CHECKS",
    "CheckSpec",
    "build_report",
    "convergence_table",
    "exit_code",
    "resolve_checks",
    "run_check",
    "write_report_csv",
    "write_report_json",
    "write_resolved_config",
    "write_table_csv",
]
