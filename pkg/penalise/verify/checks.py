"""
The verification checks.

Each check returns its measurements; run_check wraps them into a CheckResult
and turns any exception into a failed result.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from prefect.logging import get_logger
from scipy import stats

from penalise.exceptions import ArgumentError
from penalise.funcspace.approximation import approximate
from penalise.funcspace.operations import project_bridge, truncate
from penalise.funcspace.step import StepFunction
from penalise.measure.density import lambda_T_batch, lambda_T_expectation, verify_lambda_reduction
from penalise.measure.expectation import chunk_sizes, w_expectation, wG_probability
from penalise.measure.tilted import TiltedBatch, sample_tilted, sample_tilted_batch
from penalise.models.config import SuiteConfig
from penalise.models.estimate import RatioEstimate
from penalise.models.reports import CheckResult, Measurement
from penalise.numerics.kernels import (
    arcsine_kernel,
    arcsine_kernel_exponential,
    arcsine_kernel_values,
    limit_ratio,
)
from penalise.numerics.norms import phi_norm, profile_integrand, tail_weight
from penalise.numerics.quadrature import integrate_singular, integrate_to_infinity
from penalise.numerics.tilting import TiltingConfig
from penalise.paths.grid import SeedSpec, TimeGrid
from penalise.paths.operations import last_exit_batch
from penalise.paths.samplers import sample_bessel3, sample_bessel3_batch, sample_bm_batch, sample_bridge_batch
from penalise.verify import gates
from penalise.verify.context import CHECK_STREAM_BLOCK, CheckContext
from penalise.verify.corpus import counterexample, local_convergence_integrand, norm_corpus, step_corpus
from penalise.wiener.decomposition import decompose_batch, decompose_integral, partial_integrals, partial_integrals_batch
from penalise.wiener.integrals import bessel_centering, bessel_integral_centered, stieltjes, stieltjes_batch
from penalise.wiener.moments import holder_bounds, holder_increment_moment

logger = get_logger(__name__)

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass
class CheckOutcome:
    measurements: List[Measurement]
    n_paths: int = 0
    dt: Optional[float] = None
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    kind: str
    location: str
    identity: str
    run: Callable[[CheckContext], CheckOutcome]

    @property
    def provenance(self) -> str:
        """Where the identity comes from, then the identity itself."""
        return f"{self.location}: {self.identity}"

def _relative_residual(a: np.ndarray, b: np.ndarray, scale: np.ndarray) -> float:
    return float(np.max(np.abs(a - b) / scale)) if np.size(a) else 0.0


# --- Wiener measure -------------------------------------------------------


def bm_isometry(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    measurements = []
    for i, f in enumerate(step_corpus()):
        grid = TimeGrid.explicit(f.breakpoints)

        def draw(seed: SeedSpec, size: int, f: StepFunction = f, grid: TimeGrid = grid) -> Dict[str, np.ndarray]:
            integral = stieltjes_batch(f, grid.times, sample_bm_batch(grid, seed, size))
            return {"square": integral ** 2, "value": integral}

        acc = ctx.accumulate(i, draw)
        measurements.append(
            gates.equality(f"W[(I f{i})^2] = ||f{i}||^2", acc["square"].mean, f.l2_norm_squared(), acc["square"].stderr, g)
        )
        measurements.append(gates.equality(f"W[I f{i}] = 0", acc["value"].mean, 0.0, acc["value"].stderr, g))

    grid = TimeGrid.explicit([1.0, 2.0])

    def covariance(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        x = sample_bm_batch(grid, seed, size)
        return {"var2": x[:, 2] ** 2, "cov12": x[:, 1] * x[:, 2]}

    acc = ctx.accumulate(10, covariance)
    measurements.append(gates.equality("Var(X_2) = 2", acc["var2"].mean, 2.0, acc["var2"].stderr, g))
    measurements.append(gates.equality("Cov(X_1, X_2) = 1", acc["cov12"].mean, 1.0, acc["cov12"].stderr, g))
    return CheckOutcome(measurements, n_paths=ctx.n_paths)


def bridge_isometry(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    cases = [(StepFunction.indicator(0.0, 0.5), 1.0)] + [(f, 2.5) for f in step_corpus()]
    measurements = []
    for i, (f, u) in enumerate(cases):
        head = truncate(f, u)
        projected = project_bridge(head, u)
        grid = TimeGrid.explicit([t for t in head.breakpoints if t < u] + [u])
        scale = (head.sup_norm() + 1.0)

        def draw(
            seed: SeedSpec, size: int, head: StepFunction = head, projected: StepFunction = projected,
            grid: TimeGrid = grid, u: float = u, scale: float = scale,
        ) -> Dict[str, np.ndarray]:
            bridges, bm = sample_bridge_batch(u, grid, seed, size)
            value = stieltjes_batch(head, grid.times, bridges)
            generated = stieltjes_batch(projected, grid.times, bm)
            magnitude = scale * (np.max(np.abs(bm), axis=1) + 1.0)
            return {
                "value": value,
                "square": value ** 2,
                "residual": np.abs(value - generated) / magnitude,
                "endpoint": bridges[:, -1],
            }

        acc = ctx.accumulate(i, draw)
        sigma2 = projected.l2_norm_squared()
        value = acc["value"]
        measurements.extend([
            gates.equality(f"Pi[(I f{i})^2] = ||pi_u f{i}||^2 (u={u:g})", acc["square"].mean, sigma2, acc["square"].stderr, g),
            gates.equality(f"excess kurtosis of I f{i} = 0", value.excess_kurtosis, 0.0, value.kurtosis_stderr, g)
            if sigma2 > 0 else gates.tolerance(f"I f{i} = 0", acc.maxima["value"], 0.0, 0.0),
            gates.tolerance(f"bridge identity residual f{i}", acc.maxima["residual"], 0.0, g.identity_tol),
            gates.tolerance(f"bridge endpoint X_u f{i}", acc.maxima["endpoint"], 0.0, 0.0),
        ])
    return CheckOutcome(measurements, n_paths=ctx.n_paths)


def bessel_moments(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    grid = TimeGrid.explicit([1.0, 4.0])

    def draw(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        x = sample_bessel3_batch(grid, seed, size)
        return {
            "inv1": 1.0 / x[:, 1], "inv4": 1.0 / x[:, 2],
            "x1": x[:, 1], "x4": x[:, 2], "sq1": x[:, 1] ** 2,
            "zeros": (x[:, 1:] == 0.0).any(axis=1).astype(float),
        }

    acc = ctx.accumulate(0, draw)
    measurements = [
        gates.equality("R+[1/X_1] = sqrt(2/pi)", acc["inv1"].mean, SQRT_2_OVER_PI, acc["inv1"].stderr, g),
        gates.equality("R+[1/X_4] = sqrt(2/(4 pi))", acc["inv4"].mean, math.sqrt(2.0 / (4.0 * math.pi)), acc["inv4"].stderr, g),
        gates.equality("R+[X_1] = 2 sqrt(2/pi)", acc["x1"].mean, 2.0 * SQRT_2_OVER_PI, acc["x1"].stderr, g),
        gates.equality("R+[X_4] = 2 sqrt(8/pi)", acc["x4"].mean, 2.0 * math.sqrt(8.0 / math.pi), acc["x4"].stderr, g),
        gates.equality("R+[X_1^2] = 3", acc["sq1"].mean, 3.0, acc["sq1"].stderr, g),
        gates.tolerance("Bessel zeros after time 0", acc.maxima["zeros"], 0.0, 0.0),
    ]

    tilt, horizon = ctx.tilt, ctx.config.horizon

    def tilted(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        batch = sample_tilted_batch(tilt, horizon, [1.0], seed, size)
        before = batch.u < 1.0
        x = np.abs(batch.full[:, 1])
        safe = np.where(before, x, 1.0)
        return {"scaled_inverse": np.where(before, np.sqrt(np.maximum(1.0 - batch.u, 0.0)) / safe, 0.0)}

    acc = ctx.accumulate(1, tilted)
    mass_before = 1.0 - tilt.tail_mass(1.0)
    measurements.append(
        gates.equality(
            "mu[sqrt(1-u)/|X_1|; u<1] = sqrt(2/pi) mu(u<1)",
            acc["scaled_inverse"].mean, SQRT_2_OVER_PI * mass_before, acc["scaled_inverse"].stderr, g,
        )
    )
    return CheckOutcome(measurements, n_paths=ctx.n_paths)


def fhy_inequality(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    psis = {"x^2": np.square, "x^4": lambda x: x ** 4, "|x|": np.abs}
    measurements = []
    for i, f in enumerate(step_corpus()):
        grid = TimeGrid.explicit(f.breakpoints)

        def bessel(seed: SeedSpec, size: int, f: StepFunction = f, grid: TimeGrid = grid) -> Dict[str, np.ndarray]:
            centered = stieltjes_batch(f, grid.times, sample_bessel3_batch(grid, seed, size)) - bessel_centering(f)
            return {name: psi(centered) for name, psi in psis.items()}

        def brownian(seed: SeedSpec, size: int, f: StepFunction = f, grid: TimeGrid = grid) -> Dict[str, np.ndarray]:
            value = stieltjes_batch(f, grid.times, sample_bm_batch(grid, seed, size))
            return {name: psi(value) for name, psi in psis.items()}

        left, right = ctx.accumulate(2 * i, bessel), ctx.accumulate(2 * i + 1, brownian)
        for name in psis:
            se = math.hypot(left[name].stderr, right[name].stderr)
            measurements.append(
                gates.inequality(f"R+[psi(I^ f{i})] <= W[psi(I f{i})], psi={name}", left[name].mean, right[name].mean, se, g)
            )
        if i == 0:
            measurements.append(
                gates.equality("R+[(I^ 1[0,1))^2] = 3 - 8/pi", left["x^2"].mean, 3.0 - 8.0 / math.pi, left["x^2"].stderr, g)
            )
    return CheckOutcome(measurements, n_paths=ctx.n_paths)


def centered_identity(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    measurements = []
    for i, f in enumerate(step_corpus()):
        grid = TimeGrid.explicit(f.breakpoints)

        def draw(seed: SeedSpec, size: int, f: StepFunction = f, grid: TimeGrid = grid) -> Dict[str, np.ndarray]:
            return {"raw": stieltjes_batch(f, grid.times, sample_bessel3_batch(grid, seed, size))}

        acc = ctx.accumulate(i, draw)
        measurements.append(
            gates.equality(
                f"R+[I f{i}] = sqrt(2/pi) int f{i}/sqrt(s)", acc["raw"].mean, bessel_centering(f), acc["raw"].stderr, g
            )
        )
        path = sample_bessel3(grid, ctx.seed(50 + i))
        centred = bessel_integral_centered(f, path).value
        raw = stieltjes(f, path).value
        measurements.append(
            gates.tolerance(f"I f{i} = I^ f{i} + centering", raw, centred + bessel_centering(f), 1e-12 * (1.0 + abs(raw)))
        )
    return CheckOutcome(measurements, n_paths=ctx.n_paths)


# --- decomposition at the last exit time ----------------------------------


def _corpus_times(extra: List[float]) -> List[float]:
    times = set(extra)
    for f in step_corpus():
        times.update(float(t) for t in f.breakpoints)
    return sorted(times)


def decomposition_additivity(ctx: CheckContext) -> CheckOutcome:
    tol = ctx.gates.additivity_tol
    corpus = step_corpus() + [StepFunction.indicator(0.0, 8.0)]
    times = _corpus_times([8.0])
    tilt, horizon = ctx.tilt, ctx.config.horizon

    def draw(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        batch = sample_tilted_batch(tilt, horizon, times, seed, size)
        out: Dict[str, np.ndarray] = {}
        for i, f in enumerate(corpus):
            whole, j1, j2 = decompose_batch(f, batch)
            out[f"residual{i}"] = np.abs(whole - (j1 + j2)) / (1.0 + np.abs(j1) + np.abs(j2))
            before = batch.u >= f.support_end
            out[f"j2_after_support{i}"] = np.where(before, j2, 0.0)
        whole, j1, j2 = decompose_batch(corpus[-1], batch)
        inside = batch.u < 8.0
        out["j1_indicator"] = np.where(inside, j1, 0.0)
        out["j2_minus_x8"] = np.where(inside, j2 - batch.full[:, -1], 0.0)
        return out

    acc = ctx.accumulate(0, draw)
    measurements = [
        gates.tolerance(f"|whole - (j1 + j2)| f{i}", acc.maxima[f"residual{i}"], 0.0, tol) for i in range(len(corpus))
    ]
    measurements += [
        gates.tolerance(f"j2 = 0 when u >= support f{i}", acc.maxima[f"j2_after_support{i}"], 0.0, 0.0)
        for i in range(len(corpus))
    ]
    measurements.append(gates.tolerance("j1 = 0 for 1[0,8) when u < 8", acc.maxima["j1_indicator"], 0.0, 0.0))
    measurements.append(gates.tolerance("j2 = X_8 for 1[0,8) when u < 8", acc.maxima["j2_minus_x8"], 0.0, tol))

    worst = 0.0
    for k in range(3):
        sample = sample_tilted(tilt, horizon, ctx.config.dt, ctx.seed(1).child(k))
        for f in step_corpus():
            whole, j1, j2 = decompose_integral(f, sample)
            worst = max(worst, abs(whole.value - (j1.value + j2.value)) / (1.0 + abs(j1.value) + abs(j2.value)))
    measurements.append(gates.tolerance("|whole - (j1 + j2)| on gridded samples", worst, 0.0, tol))
    return CheckOutcome(measurements, n_paths=ctx.n_paths, dt=ctx.config.dt)


def partial_consistency(ctx: CheckContext) -> CheckOutcome:
    tol = ctx.gates.additivity_tol
    t_values = [0.0, 0.25, 0.75, 1.5, 2.5, 3.0, 5.0]
    times = _corpus_times(t_values)
    tilt, horizon = ctx.tilt, ctx.config.horizon
    corpus = step_corpus()

    def draw(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        batch = sample_tilted_batch(tilt, horizon, times, seed, size)
        out: Dict[str, np.ndarray] = {}
        for i, f in enumerate(corpus):
            partial = partial_integrals_batch(f, batch, t_values)
            whole = stieltjes_batch(f, batch.times, batch.full)
            out[f"start{i}"] = partial[:, 0]
            out[f"end{i}"] = np.abs(partial[:, -1] - whole) / (1.0 + np.abs(whole))
            worst = np.zeros(batch.n_paths)
            for k in range(1, len(t_values)):
                piece = stieltjes_batch(f.restrict(t_values[k - 1], t_values[k]), batch.times, batch.full)
                increment = partial[:, k] - partial[:, k - 1]
                scale = 1.0 + np.abs(partial[:, k]) + np.abs(partial[:, k - 1])
                worst = np.maximum(worst, np.abs(increment - piece) / scale)
            out[f"increment{i}"] = worst
        return out

    acc = ctx.accumulate(0, draw)
    measurements = []
    for i in range(len(corpus)):
        measurements += [
            gates.tolerance(f"I_0 f{i} = 0", acc.maxima[f"start{i}"], 0.0, 0.0),
            gates.tolerance(f"I_t f{i} = whole beyond support", acc.maxima[f"end{i}"], 0.0, tol),
            gates.tolerance(f"I_t - I_t' f{i} = I(f 1[t',t))", acc.maxima[f"increment{i}"], 0.0, tol),
        ]

    sample = sample_tilted(tilt, horizon, ctx.config.dt, ctx.seed(1))
    t_grid = TimeGrid.explicit(t_values)
    worst = 0.0
    for f in corpus:
        values = partial_integrals(f, sample, t_grid)
        whole, _, _ = decompose_integral(f, sample)
        worst = max(worst, abs(values[-1].value - whole.value) / (1.0 + abs(whole.value)), abs(values[0].value))
    measurements.append(gates.tolerance("I_t on a gridded sample", worst, 0.0, tol))
    return CheckOutcome(measurements, n_paths=ctx.n_paths, dt=ctx.config.dt)


def _chi3_fourth_central_moment() -> float:
    # E[(R_1 - m)^4] with m = 2 sqrt(2/pi), E R^2 = 3, E R^3 = 4m, E R^4 = 15
    m2 = 8.0 / math.pi
    return 15.0 + 2.0 * m2 - 3.0 * m2 * m2


def holder_moment(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    f = StepFunction.indicator(0.0, 1.0)
    estimate = holder_increment_moment(
        f, None, 0.0, 2.0, ctx.n_paths, ctx.seed(0), chunk_size=ctx.config.chunk_size
    )
    bounds = holder_bounds(f, 0.0, 2.0)
    measurements = [
        gates.equality("R+[|I^ 1[0,1)|^4] = chi3 oracle", estimate.mean, _chi3_fourth_central_moment(), estimate.stderr, g),
        gates.inequality("R+[|I^ 1[0,1)|^4] <= 3 max(s2, s2^2)", estimate.mean, bounds["bound"], estimate.stderr, g),
    ]

    f = StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]])
    top = f.support_end + f.l2_norm_squared()
    rng = ctx.seed(99).generator()
    pairs = np.sort(rng.uniform(0.0, top, size=(10, 2)), axis=1)
    per_pair = max(ctx.n_paths // 10, 2)
    recorded = []
    for k, (v1, v2) in enumerate(pairs):
        bounds = holder_bounds(f, float(v1), float(v2))
        est = holder_increment_moment(
            f, ctx.tilt, float(v1), float(v2), per_pair, ctx.seed(1 + k),
            horizon=ctx.config.horizon, chunk_size=ctx.config.chunk_size,
        )
        measurements.append(
            gates.inequality(f"mu[|dJ3|^4] <= 3 max(s2, s2^2) on ({v1:.4g}, {v2:.4g})", est.mean, bounds["bound"], est.stderr, g)
        )
        recorded.append({"v1": float(v1), "v2": float(v2), "estimate": est.mean, **bounds})
    return CheckOutcome(measurements, n_paths=ctx.n_paths, extra={"pairs": recorded})


# --- the tilted measure ---------------------------------------------------


def _u_law(tilt: TiltingConfig) -> Dict[str, Any]:
    if tilt.rate is not None:
        law = stats.gamma(a=0.5, scale=1.0 / tilt.rate)
        return {"cdf": law.cdf, "mean": law.mean(), "second": law.moment(2), "half": float(law.cdf(0.5))}
    if tilt.name.startswith("1(0,"):
        c = tilt.effective_support
        return {
            "cdf": lambda x: np.sqrt(np.clip(np.asarray(x) / c, 0.0, 1.0)),
            "mean": c / 3.0, "second": c * c / 5.0, "half": math.sqrt(min(0.5 / c, 1.0)),
        }
    raise ArgumentError(f"No closed-form last-exit law for tilt {tilt.name}")


def tilted_marginal(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    tilt, horizon, n = ctx.tilt, ctx.config.horizon, ctx.n_paths
    law = _u_law(tilt)
    draws: List[np.ndarray] = []

    def draw(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        batch = sample_tilted_batch(tilt, horizon, [0.0], seed, size)
        draws.append(batch.u)
        return {"u": batch.u, "u2": batch.u ** 2, "half": (batch.u <= 0.5).astype(float), "sign": batch.sign}

    acc = ctx.accumulate(0, draw)
    u = np.concatenate(draws)
    statistic = float(stats.kstest(u, law["cdf"]).statistic)
    measurements = [
        gates.critical("KS statistic of u", statistic, float(stats.kstwo.ppf(0.99, u.size)), float(stats.kstwo.ppf(0.999999, u.size))),
        gates.equality("mu[u]", acc["u"].mean, float(law["mean"]), acc["u"].stderr, g),
        gates.equality("mu[u^2]", acc["u2"].mean, float(law["second"]), acc["u2"].stderr, g),
        gates.equality("mu(u <= 1/2)", acc["half"].mean, law["half"], acc["half"].stderr, g),
        gates.equality("mu[sign]", acc["sign"].mean, 0.0, acc["sign"].stderr, g),
    ]

    chunk = ctx.config.chunk_size
    one = w_expectation(lambda b: np.ones(b.n_paths), tilt, n, ctx.seed(1), horizon=horizon, chunk_size=chunk)
    measurements.append(gates.tolerance("mu[1] = 1", one.mean, 1.0, 0.0))
    measurements.append(gates.tolerance("stderr of mu[1] = 0", one.stderr, 0.0, 0.0))

    def e_minus_g(b: TiltedBatch) -> np.ndarray:
        return np.exp(-b.u)

    positive = wG_probability(lambda b: (b.sign > 0).astype(float), e_minus_g, tilt, n, ctx.seed(2), horizon=horizon, chunk_size=chunk)
    everything = wG_probability(lambda b: np.ones(b.n_paths), e_minus_g, tilt, n, ctx.seed(3), horizon=horizon, chunk_size=chunk)
    own = wG_probability(
        lambda b: (b.u <= 0.5).astype(float), lambda b: tilt.phi(b.u), tilt, n, ctx.seed(4), horizon=horizon, chunk_size=chunk
    )
    measurements += [
        gates.equality("W^G(sign = +1), G = e^-g", positive.mean, 0.5, positive.stderr, g),
        gates.tolerance("W^G(everything) = 1", everything.mean, 1.0, 0.0),
        gates.equality("W^G(u <= 1/2), G = phi(g)", own.mean, law["half"], own.stderr, g),
    ]
    return CheckOutcome(measurements, n_paths=n, extra={"ks_statistic": statistic, "truncation_mass": tilt.tail_mass(horizon)})


def local_convergence(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    tilt, horizon = ctx.tilt, ctx.config.horizon
    f = local_convergence_integrand()
    finest = approximate(f, 8)
    levels = list(range(2, 8))
    differences = [approximate(f, level) - finest for level in levels]
    times = finest.breakpoints
    epsilon = g.local_epsilon
    chunk = ctx.chunk_for(times.size)

    # one pass per chunk; every level reads the same draws
    probabilities = [RatioEstimate() for _ in levels]
    base = ctx.seed(0)
    for i, size in enumerate(chunk_sizes(ctx.n_paths, chunk)):
        batch = sample_tilted_batch(tilt, horizon, times, base.child(i), size)
        weight = np.exp(-batch.u) / tilt.phi(batch.u)
        for k, difference in enumerate(differences):
            hit = np.abs(stieltjes_batch(difference, batch.times, batch.full)) >= epsilon
            probabilities[k] = probabilities[k].merge(RatioEstimate.from_samples(hit * weight, weight))

    measurements = []
    for (l0, p0), (l1, p1) in zip(zip(levels, probabilities), zip(levels[1:], probabilities[1:])):
        measurements.append(
            gates.inequality(f"P(|I f_{l1} - I f_8| >= eps) <= P(|I f_{l0} - I f_8| >= eps)", p1.mean, p0.mean, math.hypot(p0.stderr, p1.stderr), g)
        )
    last = probabilities[-1]
    measurements.append(
        gates.inequality(f"P(|I f_7 - I f_8| >= {epsilon:g}) < {g.local_threshold:g}", last.mean, g.local_threshold, last.stderr, g)
    )
    return CheckOutcome(
        measurements,
        n_paths=ctx.n_paths,
        extra={"probabilities": {str(level): p.mean for level, p in zip(levels, probabilities)}},
    )


def _bias_rate(e1: float, e2: float, e4: float) -> float:
    near, far = abs(e1 - e2), abs(e2 - e4)
    if near == 0.0 or far == 0.0:
        return math.nan
    return math.log2(far / near)


def lambda_cross_check(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    tilt, horizon, T, dt = ctx.tilt, ctx.config.horizon, ctx.config.lambda_time, ctx.config.dt
    functionals: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
        "1{X_T>0}": lambda x: (x > 0).astype(float),
        "min(|X_T|,1)": lambda x: np.minimum(np.abs(x), 1.0),
        "cos(X_T)": np.cos,
    }
    grid = TimeGrid.uniform(T, dt)
    k = len(grid) - 1

    def wiener(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        x = sample_bm_batch(grid, seed, size)
        out = {}
        for step, label in ((1, "d1"), (2, "d2"), (4, "d4")):
            times, values = grid.times[::step], x[:, ::step]
            if times[-1] != grid.times[-1]:
                times, values = np.append(times, grid.times[-1]), np.column_stack((values, x[:, -1]))
            density = lambda_T_batch(times, values, times.size - 1)
            for name, F in functionals.items():
                out[f"{name}:{label}"] = F(x[:, k]) * density
        # paired differences, so the bias proxies carry their own standard errors
        for name in functionals:
            out[f"{name}:d1-d2"] = out[f"{name}:d1"] - out[f"{name}:d2"]
            out[f"{name}:d2-d4"] = out[f"{name}:d2"] - out[f"{name}:d4"]
        return out

    right = ctx.accumulate(0, wiener, chunk_size=ctx.chunk_for(len(grid)))
    measurements, rates = [], {}
    for i, (name, F) in enumerate(functionals.items()):
        def functional(b: TiltedBatch, F: Callable = F) -> np.ndarray:
            return F(b.full[:, 1]) * np.exp(-b.u) / tilt.phi(b.u)

        left = w_expectation(functional, tilt, ctx.n_paths, ctx.seed(1 + i), query_times=[T], horizon=horizon, chunk_size=ctx.config.chunk_size)
        e1, e2, e4 = (right[f"{name}:{d}"].mean for d in ("d1", "d2", "d4"))
        allowance = abs(e1 - e2) / (math.sqrt(2.0) - 1.0)
        rates[name] = {"bias_proxy_dt": abs(e1 - e2), "bias_proxy_2dt": abs(e2 - e4), "observed_rate": _bias_rate(e1, e2, e4)}
        se = math.hypot(tilt.w_mass * left.stderr, right[f"{name}:d1"].stderr)
        measurements.append(
            gates.equality(f"W[{name} e^-g] = W[{name} Lambda_T]", tilt.w_mass * left.mean, e1, se, g, allowance=allowance)
        )
        near, far = right[f"{name}:d1-d2"], right[f"{name}:d2-d4"]
        measurements.append(
            gates.inequality(
                f"grid bias of W[{name} Lambda_T] at dt <= at 2dt",
                abs(near.mean), abs(far.mean), math.hypot(near.stderr, far.stderr), g,
            )
        )
    return CheckOutcome(measurements, n_paths=ctx.n_paths, dt=dt, extra={"grid_bias": rates})


# --- deterministic analysis -----------------------------------------------


def limit_ratio_check(ctx: CheckContext) -> CheckOutcome:
    tilt, tol = ctx.tilt, ctx.gates
    distances = [abs(limit_ratio(tilt, t) - tilt.c_phi) for t in (25.0, 100.0, 400.0)]
    measurements = [
        gates.holds("|limit_ratio(t) - C_phi| decreasing over t = 25, 100, 400", distances[0] > distances[1] > distances[2], distances[2]),
        gates.tolerance("limit_ratio(400)", limit_ratio(tilt, 400.0), tilt.c_phi, tol.limit_ratio_tolerance),
        gates.tolerance(
            "limit_ratio(0.01) = pi phi(0+) sqrt(0.01) within 1%",
            limit_ratio(tilt, 0.01), math.pi * tilt.phi_at_zero * 0.1, 0.01 * math.pi * tilt.phi_at_zero * 0.1,
        ),
    ]
    kernels = [arcsine_kernel(tilt, s) for s in (0.01, 1.0, 7.0, 100.0)]
    measurements.append(
        gates.holds("arcsine_kernel <= phi(0+) pi", all(k <= math.pi * tilt.phi_at_zero * (1 + 1e-12) for k in kernels), max(kernels))
    )
    if tilt.rate is not None:
        for s, k in zip((0.01, 1.0, 7.0, 100.0), kernels):
            exact = float(arcsine_kernel_exponential(tilt.rate, s))
            measurements.append(gates.tolerance(f"arcsine_kernel({s:g}) closed form", k, exact, tol.quadrature_rel_tol * exact))
    return CheckOutcome(measurements, extra={"distances": distances})


def _kernel_envelope(tilt: TiltingConfig) -> tuple:
    s = np.logspace(-6, 8, 113)
    weighted = arcsine_kernel_values(tilt, s) * (1.0 + np.sqrt(s))
    low = min(float(np.min(weighted)), tilt.c_phi)
    high = max(float(np.max(weighted)), math.pi * tilt.phi_at_zero)
    return 0.99 * low, 1.01 * high


def norm_equivalence(ctx: CheckContext) -> CheckOutcome:
    tilt = ctx.tilt
    low, high = _kernel_envelope(tilt)
    ratios, measurements, table = [], [], []
    for f in norm_corpus():
        profile = profile_integrand(f, tilt)
        table.append(profile.model_dump())
        ratio = profile.phi_norm / profile.l1_one_plus_sqrt_norm if profile.l1_one_plus_sqrt_norm > 0 else math.nan
        ratios.append(ratio)
        measurements.append(
            gates.holds(f"phi_norm finite iff l1_one_plus_sqrt finite: {f.name}", profile.phi_finite == profile.in_l1_one_plus_sqrt, ratio)
        )
        if profile.in_l1_sqrt:
            measurements.append(gates.holds(f"l1_sqrt finite implies l1_one_plus_sqrt finite: {f.name}", profile.in_l1_one_plus_sqrt))
            weights = [tail_weight(f, u) for u in (0.5, 3.0)]
            measurements.append(
                gates.holds(f"tail_weight finite: {f.name}", all(math.isfinite(w) for w in weights), max(weights))
            )
    finite = [r for r in ratios if math.isfinite(r)]
    c0, c1 = min(finite), max(finite)
    measurements.append(gates.holds(f"ratios within kernel envelope [{low:.4g}, {high:.4g}]", low <= c0 and c1 <= high, c1, high))
    measurements.append(gates.holds("corpus has at least 20 integrands", len(finite) >= 20, float(len(finite)), 20.0))
    return CheckOutcome(measurements, extra={"c0": c0, "C0": c1, "envelope": [low, high], "profiles": table})


def counterexample_check(ctx: CheckContext) -> CheckOutcome:
    profile = profile_integrand(counterexample(), ctx.tilt)
    expected = 1.0 / math.sqrt(math.log(2.0))
    return CheckOutcome(
        [
            gates.tolerance("l2 norm = 1/sqrt(log 2)", profile.l2_norm, expected, 1e-3 * expected),
            gates.holds("l1_sqrt norm infinite", not profile.in_l1_sqrt, profile.l1_sqrt_norm),
            gates.holds("l1_one_plus_sqrt norm infinite", not profile.in_l1_one_plus_sqrt, profile.l1_one_plus_sqrt_norm),
            gates.holds("phi norm infinite", not profile.phi_finite, profile.phi_norm),
        ],
        extra={"profile": profile.model_dump()},
    )


# --- supplementary checks -------------------------------------------------


def quadrature_calibration(ctx: CheckContext) -> CheckOutcome:
    tol = ctx.gates.quadrature_rel_tol
    arcsine = lambda u: 1.0 / np.sqrt(u * (1.0 - u))  # noqa: E731
    gamma_half = lambda u: np.exp(-u) / np.sqrt(u)  # noqa: E731
    half_line = integrate_singular(gamma_half, 0.0, 1.0, singular_left=True) + integrate_to_infinity(gamma_half, 1.0)
    measurements = [
        gates.tolerance("int_0^1 1 du", integrate_singular(lambda u: np.ones_like(u), 0.0, 1.0), 1.0, tol),
        gates.tolerance("int_0^1 du/sqrt(u(1-u))", integrate_singular(arcsine, 0.0, 1.0, True, True), math.pi, tol * math.pi),
        gates.tolerance("int_0^inf e^-u/sqrt(u) du", half_line, math.sqrt(math.pi), tol * math.sqrt(math.pi)),
    ]
    split = integrate_singular(arcsine, 0.0, 0.3, singular_left=True) + integrate_singular(arcsine, 0.3, 1.0, singular_right=True)
    measurements.append(gates.tolerance("additivity over [0,0.3] + [0.3,1]", split, math.pi, 1e-10 * math.pi))
    combined = integrate_singular(lambda u: 2.0 * arcsine(u) + 3.0 * np.ones_like(u), 0.0, 1.0, True, True)
    measurements.append(gates.tolerance("linearity", combined, 2.0 * math.pi + 3.0, 1e-10 * (2.0 * math.pi + 3.0)))
    for x, T, closed, direct, _ in verify_lambda_reduction():
        measurements.append(gates.tolerance(f"Lambda_T u-integral at x={x:g}, T={T:g}", direct, closed, tol * closed))
    for T in (0.5, 1.0, 4.0):
        measurements.append(gates.tolerance(f"W[Lambda_{T:g}] = 1/sqrt(2)", lambda_T_expectation(T), 1.0 / math.sqrt(2.0), tol))
    return CheckOutcome(measurements)


def _wiener_last_exit(ctx: CheckContext, estimate_index: int, t: float, functional: Callable[[np.ndarray], np.ndarray]) -> Dict[str, float]:
    dt = max(ctx.config.dt, t / 1024.0)
    grid = TimeGrid.uniform(t, dt)

    def draw(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        x = sample_bm_batch(grid, seed, size)
        out = {}
        for step, label in ((1, "d1"), (2, "d2"), (4, "d4")):
            times, values = grid.times[::step], x[:, ::step]
            if times[-1] != grid.times[-1]:
                times, values = np.append(times, grid.times[-1]), np.column_stack((values, x[:, -1]))
            out[label] = functional(last_exit_batch(times, values, times.size - 1))
        return out

    acc = ctx.accumulate(estimate_index, draw, chunk_size=ctx.chunk_for(len(grid)))
    e1, e2, e4 = acc["d1"].mean, acc["d2"].mean, acc["d4"].mean
    return {
        "estimate": e1, "stderr": acc["d1"].stderr, "dt": dt,
        "allowance": abs(e1 - e2) / (math.sqrt(2.0) - 1.0), "rate": _bias_rate(e1, e2, e4),
    }


def arcsine_law(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    result = _wiener_last_exit(ctx, 0, 1.0, lambda gT: (gT <= 0.5).astype(float))
    measurements = [
        gates.equality("W(g_1 <= 1/2) = 1/2", result["estimate"], 0.5, result["stderr"], g, allowance=result["allowance"])
    ]
    phi = ctx.tilt.phi
    result_phi = _wiener_last_exit(ctx, 1, 1.0, lambda gT: phi(gT))
    target = arcsine_kernel(ctx.tilt, 1.0) / math.pi
    measurements.append(
        gates.equality("W[phi(g_1)] = K_phi(1)/pi", result_phi["estimate"], target, result_phi["stderr"], g, allowance=result_phi["allowance"])
    )
    return CheckOutcome(measurements, n_paths=ctx.n_paths, dt=result["dt"], extra={"grid_bias_rate": result["rate"]})


def first_moment_bounds(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    tilt, horizon = ctx.tilt, ctx.config.horizon
    corpus = step_corpus()
    times = _corpus_times([])

    def draw(seed: SeedSpec, size: int) -> Dict[str, np.ndarray]:
        batch = sample_tilted_batch(tilt, horizon, times, seed, size)
        out = {}
        for i, f in enumerate(corpus):
            _, j1, j2 = decompose_batch(f, batch)
            out[f"j1_{i}"], out[f"j2_{i}"] = np.abs(j1), np.abs(j2)
        return out

    acc = ctx.accumulate(0, draw)
    measurements = []
    for i, f in enumerate(corpus):
        norm = f.l2_norm()
        tail_bound = norm + SQRT_2_OVER_PI * phi_norm(f.as_integrand(), tilt) / tilt.c_phi
        measurements.append(gates.inequality(f"mu[|J1 f{i}|] <= ||f{i}||", acc[f"j1_{i}"].mean, norm, acc[f"j1_{i}"].stderr, g))
        measurements.append(gates.inequality(f"mu[|J2 f{i}|] <= ||f{i}|| + sqrt(2/pi) ||f{i}||_phi / C_phi", acc[f"j2_{i}"].mean, tail_bound, acc[f"j2_{i}"].stderr, g))
    return CheckOutcome(measurements, n_paths=ctx.n_paths)


def limit_theorem_mc(ctx: CheckContext) -> CheckOutcome:
    g = ctx.gates
    phi = ctx.tilt.phi
    measurements, extra = [], {}
    for i, t in enumerate((1.0, 4.0)):
        result = _wiener_last_exit(ctx, i, t, lambda gT: phi(gT))
        scale = math.sqrt(math.pi * t / 2.0)
        target = scale * arcsine_kernel(ctx.tilt, t) / math.pi
        measurements.append(
            gates.equality(
                f"sqrt(pi t/2) W[phi(g_t)] at t={t:g}", scale * result["estimate"], target,
                scale * result["stderr"], g, allowance=scale * result["allowance"],
            )
        )
        extra[str(t)] = {"estimate": scale * result["estimate"], "limit": ctx.tilt.w_mass}
    return CheckOutcome(measurements, n_paths=ctx.n_paths, extra=extra)


CHECKS: Dict[str, CheckSpec] = {
    entry.check_id: entry
    for entry in [
        CheckSpec("bm_isometry", "statistical", "Wiener integral of step functions under W", "W[|int f dX|^2] = int |f|^2 ds", bm_isometry),
        CheckSpec("bridge_isometry", "statistical", "Brownian bridge realisation B_s - (s/u) B_u", "Pi(u)[(int_0^u f dX)^2] = int_0^u |pi_u f|^2 ds; int f dX = int pi_u f dB", bridge_isometry),
        CheckSpec("bessel_moments", "statistical", "Bessel(3) integral through its SDE", "R+[X_t] = sqrt(2/pi) int_0^t ds/sqrt(s), R+[1/X_t] = sqrt(2/(pi t))", bessel_moments),
        CheckSpec("fhy_inequality", "statistical", "centred Bessel integral, convex-moment domination", "R+[psi(int f dX^)] <= W[psi(int f dX)]", fhy_inequality),
        CheckSpec("centered_identity", "statistical", "centred Bessel integral, uncentred relation", "int f dX = int f dX^ + sqrt(2/pi) int f ds/sqrt(s)", centered_identity),
        CheckSpec("decomposition_additivity", "deterministic", "decomposition of I(f;u,X) at the last exit time", "I(f;u,X) = int_0^u f dX + int f(s+u) d(theta_u X)_s", decomposition_additivity),
        CheckSpec("partial_consistency", "deterministic", "continuous modification t -> I_t(f;u,X)", "I_t(f;u,X) = int_0^(u^t) f dX + int_0^((t-u)v0) f(s+u) d(theta_u X)_s", partial_consistency),
        CheckSpec("holder_moment", "statistical", "Kolmogorov continuity argument for the time-changed integral", "mu[|J3(f_L(v2)) - J3(f_L(v1))|^4] <= 3 (int_L(v1)^L(v2) |f|^2)^2", holder_moment),
        CheckSpec("tilted_marginal", "statistical", "finite measure mu_phi built from W", "mu_phi(du) = phi(u) du / (C_phi sqrt(u)), Gamma(1/2) last exit for phi = e^-u", tilted_marginal),
        CheckSpec("local_convergence", "statistical", "local convergence in W-measure through W^G", "W^G(|I(f_n) - I(f)| >= eps) -> 0", local_convergence),
        CheckSpec("lambda_cross_check", "statistical", "absolute continuity of W against Wiener measure on F_T", "W[F_T e^-g] = W[F_T Lambda_T]", lambda_cross_check),
        CheckSpec("limit_ratio", "deterministic", "limit theorem for the arcsine kernel", "sqrt(t) int_0^t phi(u) du / sqrt(u(t-u)) -> int_0^inf phi(u) du / sqrt(u)", limit_ratio_check),
        CheckSpec("norm_equivalence", "deterministic", "norm ||.||_phi against L1(ds/(1+sqrt s))", "c0 ||f||_L1(ds/(1+sqrt s)) <= ||f||_phi <= C0 ||f||_L1(ds/(1+sqrt s))", norm_equivalence),
        CheckSpec("counterexample", "deterministic", "uncentred Bessel integral counterexample", "f = 1/(sqrt(s) log s) on (2, inf) is in L2(ds) but int f ds/sqrt(s) diverges", counterexample_check),
        CheckSpec("quadrature_calibration", "deterministic", "quadrature oracles for the u-integrals", "pi, sqrt(pi), Lambda_T u-integral in closed form", quadrature_calibration),
        CheckSpec("arcsine_law", "statistical", "arcsine law of g_t under W", "W(g_1 <= 1/2) = 1/2", arcsine_law),
        CheckSpec("first_moment_bounds", "statistical", "integrability of J1 and J2 under mu_phi", "mu[|J1|] <= ||f||_L2, mu[|J2|] bounded by ||f||_L2 and ||f||_phi", first_moment_bounds),
        CheckSpec("limit_theorem_mc", "statistical", "penalisation limit of W[phi(g_t)]", "sqrt(pi t/2) W[phi(g_t)] -> W[phi(g)]", limit_theorem_mc),
    ]
}

DEFAULT_CHECKS: List[str] = list(CHECKS)[:14]
EXTRA_CHECKS: List[str] = list(CHECKS)[14:]


def resolve_checks(requested: Optional[List[str]]) -> List[str]:
    """
    Validate a check selection, keeping registry order.

    Raises:
        ArgumentError: On an unknown check id
    """
    if not requested:
        return list(DEFAULT_CHECKS)
    unknown = [c for c in requested if c not in CHECKS]
    if unknown:
        raise ArgumentError(f"Unknown check id(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    return [c for c in CHECKS if c in requested]


def build_context(check_id: str, config: SuiteConfig) -> CheckContext:
    position = list(CHECKS).index(check_id)
    return CheckContext(
        config=config,
        tilt=TiltingConfig.from_settings(config.tilt),
        stream_base=position * CHECK_STREAM_BLOCK,
    )


def run_check(check_id: str, config: SuiteConfig) -> CheckResult:
    """
    Run one check; exceptions become a failed CheckResult carrying the reason.

    Args:
        check_id: Registered check id
        config: Suite configuration

    Returns:
        CheckResult
    """
    if check_id not in CHECKS:
        raise ArgumentError(f"Unknown check id: {check_id}")
    entry = CHECKS[check_id]
    try:
        outcome = entry.run(build_context(check_id, config))
    except Exception as e:
        logger.error("Check %s aborted: %s", check_id, e)
        return CheckResult(
            check_id=check_id,
            kind=entry.kind,
            relation="tolerance",
            target=math.nan,
            estimate=math.nan,
            z_score=math.nan,
            verdict="fail",
            provenance=entry.provenance,
            message=f"aborted: {type(e).__name__}: {e}",
            seed=config.seed,
        )
    head = gates.worst(outcome.measurements)
    failing = [m.quantity for m in outcome.measurements if m.verdict != "pass"]
    return CheckResult(
        check_id=check_id,
        kind=entry.kind,
        relation=head.relation,
        target=head.target,
        estimate=head.estimate,
        stderr=head.stderr,
        z_score=head.z_score,
        allowance=head.allowance,
        verdict=head.verdict,
        provenance=entry.provenance,
        message="; ".join(failing) if failing else f"{len(outcome.measurements)} measurements passed",
        n_paths=outcome.n_paths,
        dt=outcome.dt,
        seed=config.seed,
        details=outcome.measurements,
        extra=outcome.extra,
    )
