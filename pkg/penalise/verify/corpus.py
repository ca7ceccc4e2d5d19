"""
Fixed integrand corpora used by the verification suite.
"""
import math
from typing import List

import numpy as np

from penalise.funcspace.step import StepFunction
from penalise.numerics.integrand import Integrand1D


def step_corpus() -> List[StepFunction]:
    """The five step functions every isometry and inequality is checked on."""
    return [
        StepFunction.from_pairs([[1.0, 1.0]]),
        StepFunction.from_pairs([[0.5, 1.0]]),
        StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]]),
        StepFunction.from_pairs([[0.5, 0.0], [1.0, 1.5], [2.0, -0.5]]),
        StepFunction.from_pairs([[0.25, 1.0], [0.5, -1.0], [1.0, 2.0], [4.0, 0.5]]),
    ]


def counterexample() -> Integrand1D:
    """f(s) = 1/(√s log s) on (2, ∞): in L²(ds) but not in L¹(ds/√s)."""
    def f(s: np.ndarray) -> np.ndarray:
        safe = np.where(s > 2.0, s, 4.0)
        return np.where(s > 2.0, 1.0 / (np.sqrt(safe) * np.log(safe)), 0.0)

    return Integrand1D(evaluator=f, support_hint=(2.0, math.inf), breakpoints=(2.0,), name="counterexample")


def truncated_counterexample(end: float) -> Integrand1D:
    base = counterexample()
    return Integrand1D(
        evaluator=lambda s: np.where(s < end, base(s), 0.0),
        support_hint=(2.0, end),
        breakpoints=(2.0, end),
        name=f"counterexample<{end:g}",
    )


def local_convergence_integrand() -> Integrand1D:
    """f(s) = e^{-s} on [0, 8)."""
    return Integrand1D(
        evaluator=lambda s: np.where(s < 8.0, np.exp(-s), 0.0),
        support_hint=(0.0, 8.0),
        breakpoints=(8.0,),
        name="exp(-s)1[0,8)",
    )


def _power(p: float, end: float) -> Integrand1D:
    return Integrand1D(
        evaluator=lambda s: np.where(s < end, np.power(s, p), 0.0),
        support_hint=(0.0, end),
        breakpoints=(end,),
        name=f"s^{p:g}1[0,{end:g})",
    )


def _tail_power(p: float) -> Integrand1D:
    return Integrand1D(
        evaluator=lambda s: np.where(s >= 1.0, np.power(np.maximum(s, 1.0), -p), 0.0),
        support_hint=(1.0, math.inf),
        breakpoints=(1.0,),
        name=f"s^-{p:g}1[1,inf)",
    )


def _exponential(rate: float) -> Integrand1D:
    return Integrand1D(evaluator=lambda s: np.exp(-rate * s), name=f"exp(-{rate:g}s)")


def norm_corpus() -> List[Integrand1D]:
    """
    Integrands with finite L¹(ds/(1+√s)) norm: indicators, powers,
    exponentials, rational tails and truncations of the counterexample.
    """
    corpus = [
        Integrand1D.indicator(0.0, 1.0),
        Integrand1D.indicator(0.0, 0.01),
        Integrand1D.indicator(0.0, 100.0),
        Integrand1D.indicator(5.0, 6.0),
        Integrand1D.indicator(50.0, 60.0, level=-2.0),
        _power(0.25, 1.0),
        _power(0.5, 2.0),
        _power(2.0, 3.0),
        _exponential(1.0),
        _exponential(0.1),
        _exponential(10.0),
        _tail_power(1.0),
        _tail_power(2.0),
        _tail_power(0.75),
        Integrand1D(
            evaluator=lambda s: 1.0 / (1.0 + s) ** 2, name="(1+s)^-2"
        ),
        Integrand1D(
            evaluator=lambda s: np.sin(s) * np.exp(-s / 4.0), name="sin(s)exp(-s/4)"
        ),
        Integrand1D(
            evaluator=lambda s: np.exp(-((s - 10.0) ** 2)), name="exp(-(s-10)^2)"
        ),
        truncated_counterexample(16.0),
        truncated_counterexample(1024.0),
    ]
    corpus.extend(
        Integrand1D(
            evaluator=f.evaluate,
            support_hint=(0.0, f.support_end),
            breakpoints=tuple(float(t) for t in f.breakpoints[1:]),
            name=f"step{i}",
        )
        for i, f in enumerate(step_corpus())
    )
    return corpus
