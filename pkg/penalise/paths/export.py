"""
CSV export of sample paths.
"""
import csv
from pathlib import Path
from typing import Union

from penalise.paths.grid import SamplePath


def path_to_csv(path: SamplePath, file_path: Union[str, Path]) -> Path:
    """
    Write a path as time,value rows with round-trip float formatting.

    Args:
        path: Sample path
        file_path: Destination file

    Returns:
        The written file path
    """
    target = Path(file_path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["time", "value"])
        for t, v in zip(path.times, path.values):
            writer.writerow([repr(float(t)), repr(float(v))])
    return target
