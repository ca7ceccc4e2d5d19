"""
Step functions, their approximation, projections and time changes.
"""
from penalise.funcspace.approximation import approximate
from penalise.funcspace.operations import project_bridge, shift, truncate
from penalise.funcspace.step import StepFunction
from penalise.funcspace.timechange import time_change_L, time_change_M

__all__ = [
    "StepFunction",
    "approximate",
    "project_bridge",
    "shift",
    "time_change_L",
    "time_change_M",
    "truncate",
]
