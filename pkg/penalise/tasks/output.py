"""
Output tasks for Prefect workflows.
"""
import csv
import os
from typing import Any, Dict, List, Sequence

from prefect import task
from prefect.cache_policies import NO_CACHE

from penalise.verify.report import format_value


@task(name="ensure_output_dir_task", cache_policy=NO_CACHE)
def ensure_output_dir_task(directory: str) -> str:
    """
    Create the output directory if needed.

    Args:
        directory: Output directory

    Returns:
        The directory path

    Raises:
        OSError: If the directory cannot be created
    """
    os.makedirs(directory, exist_ok=True)
    if not os.access(directory, os.W_OK):
        raise PermissionError(f"Output directory is not writable: {directory}")
    return directory


@task(name="write_rows_csv_task", cache_policy=NO_CACHE)
def write_rows_csv_task(rows: List[Dict[str, Any]], columns: Sequence[str], file_path: str) -> str:
    """
    Write dict rows as CSV with round-trip number formatting.

    Args:
        rows: Rows keyed by column name
        columns: Column order
        file_path: Destination file

    Returns:
        The written file path
    """
    with open(file_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row[c]) for c in columns])
    return file_path
