"""
Verdict gates turning measurements into pass / warn / fail.
"""
import math
from typing import Iterable, List

from penalise.models.config import ToleranceSettings
from penalise.models.reports import Measurement, Verdict

GATE_DOCUMENTATION = (
    "Statistical measurements pass when |z| <= z_gate and warn when |z| <= warn_gate; "
    "equality z = max(|estimate - target| - allowance, 0) / stderr, inequality "
    "z = (estimate - target - allowance) / stderr. Deterministic measurements pass "
    "when |estimate - target| <= allowance. Exit code 0 iff no deterministic fail, "
    "no statistical fail and at most one statistical warn."
)

_SEVERITY = {"pass": 0, "warn": 1, "fail": 2}


def _grade(z: float, gates: ToleranceSettings) -> Verdict:
    if math.isnan(z):
        return "fail"
    if z <= gates.z_gate:
        return "pass"
    if z <= gates.warn_gate:
        return "warn"
    return "fail"


def _standardise(excess: float, stderr: float) -> float:
    if excess <= 0:
        return excess / stderr if stderr > 0 else 0.0
    if stderr > 0 and math.isfinite(stderr):
        return excess / stderr
    return math.inf


def equality(
    quantity: str,
    estimate: float,
    target: float,
    stderr: float,
    gates: ToleranceSettings,
    allowance: float = 0.0,
) -> Measurement:
    """Two-sided z-gate on estimate − target, after subtracting the allowance."""
    deviation = estimate - target
    excess = max(abs(deviation) - allowance, 0.0)
    z = math.copysign(_standardise(excess, stderr), deviation) if excess > 0 else 0.0
    if math.isnan(estimate):
        z = math.nan
    return Measurement(
        quantity=quantity,
        relation="equality",
        target=target,
        estimate=estimate,
        stderr=stderr,
        allowance=allowance,
        z_score=z,
        verdict=_grade(abs(z), gates),
    )


def inequality(
    quantity: str,
    estimate: float,
    bound: float,
    stderr: float,
    gates: ToleranceSettings,
    allowance: float = 0.0,
) -> Measurement:
    """One-sided z-gate on estimate <= bound + allowance."""
    excess = estimate - bound - allowance
    z = _standardise(excess, stderr) if not math.isnan(estimate) else math.nan
    return Measurement(
        quantity=quantity,
        relation="inequality",
        target=bound,
        estimate=estimate,
        stderr=stderr,
        allowance=allowance,
        z_score=z,
        verdict=_grade(z, gates),
    )


def tolerance(quantity: str, estimate: float, target: float, allowed: float) -> Measurement:
    """Deterministic |estimate − target| <= allowed; z is the error in units of allowed."""
    error = abs(estimate - target)
    if estimate == target or (math.isinf(estimate) and estimate == target):
        error = 0.0
    ok = error <= allowed
    if allowed > 0:
        z = error / allowed
    else:
        z = 0.0 if ok else math.inf
    return Measurement(
        quantity=quantity,
        relation="tolerance",
        target=target,
        estimate=estimate,
        allowance=allowed,
        z_score=z,
        verdict="pass" if ok else "fail",
    )


def holds(quantity: str, condition: bool, estimate: float = 0.0, target: float = 0.0) -> Measurement:
    """Deterministic yes/no property."""
    return Measurement(
        quantity=quantity,
        relation="tolerance",
        target=target,
        estimate=estimate,
        z_score=0.0 if condition else math.inf,
        verdict="pass" if condition else "fail",
    )


def critical(
    quantity: str, statistic: float, pass_value: float, warn_value: float
) -> Measurement:
    """Test statistic against a pass and a warn critical value."""
    if statistic <= pass_value:
        verdict: Verdict = "pass"
    elif statistic <= warn_value:
        verdict = "warn"
    else:
        verdict = "fail"
    return Measurement(
        quantity=quantity,
        relation="critical",
        target=pass_value,
        estimate=statistic,
        allowance=warn_value - pass_value,
        z_score=statistic / pass_value if pass_value > 0 else math.inf,
        verdict=verdict,
    )


def worst(measurements: Iterable[Measurement]) -> Measurement:
    """
    The measurement with the most severe verdict, then the one furthest past its threshold.

    Inequalities rank by their signed z; every other relation by |z|.
    """
    items: List[Measurement] = list(measurements)

    def key(m: Measurement) -> tuple:
        z = m.z_score if m.relation == "inequality" else abs(m.z_score)
        return (_SEVERITY[m.verdict], z if not math.isnan(z) else math.inf)

    return max(items, key=key)
