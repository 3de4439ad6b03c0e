""" Numerical checks of the inequalities: exact sups on given exponent sets,
random-coefficient fuzzing, sweeps over n and power-law trend fits.

Every random sample draws from its own generator seeded by
SeedSequence([seed, n, sample]), so a report is reproducible from its
theorem, n and seed alone (`check_sample`) and a sweep gives the same rows
whatever the number of worker threads.
"""
import csv
import json
import logging
import math
import os
from dataclasses import dataclass, field, replace
from multiprocessing import cpu_count
from multiprocessing.pool import ThreadPool

import numpy as np

from src.core import ExponentSet, ExpSum, NormSpec, classify
from src.errors import (
    ArgumentError, DivergentIntegral, NumericalFailure, WrongClass
)
from src.extremal import (
    MuntzPowers, PointEval, christoffel_sup, gram, markov_sup,
    truncation_sup
)
from src.least_squares import least_squares
from src.quad import DEFAULT_CONFIG, QuadConfig, lq_norm, sup_norm
from src.result import CheckReport, Status, SweepResult, TrendResult
from src.theorems import MARKOV_VARIANTS, TheoremId, rhs_bound
from src.wrappers import FunctionWrapper
from src.witnesses import KERNEL_TOL, witness

logger = logging.getLogger(__name__)

EXACT_CHECKS = frozenset({
    TheoremId.T2_3, TheoremId.T2_6, TheoremId.T3_1, TheoremId.T4_1,
    TheoremId.T10_1, TheoremId.T10_2, TheoremId.T11_1, TheoremId.L12_5,
})
RANDOM_CHECKS = frozenset({
    TheoremId.T2_1, TheoremId.T2_4, TheoremId.T2_5, TheoremId.T2_9,
    TheoremId.T2_10, TheoremId.T3_2, TheoremId.T5_1, TheoremId.T5_2,
    TheoremId.T8_1, TheoremId.T9_1, TheoremId.L12_1, TheoremId.L12_5,
})
TREND_CHECKS = frozenset({TheoremId.T2_7, TheoremId.T7_2})
FLAGGED = frozenset({TheoremId.T5_1, TheoremId.T5_2})

EXP_CLASSES = ("T", "E", "R")


@dataclass(frozen=True)
class RandomModel:
    """ Distribution of random exponent sets.

    exp_class "T" draws purely imaginary sets with imaginary parts in
    [-R, R], "E" complex sets with real parts uniform in real_bounds and
    imaginary parts uniform in [-R, R], "R" real sets in real_bounds. Sorted
    T and R sets keep neighbouring gaps of at least min_gap.
    """
    n: int = 2
    imag_range: float = None  # None means 5n
    min_gap: float = 1e-2
    exp_class: str = "T"
    real_bounds: tuple = (-1.0, 0.0)
    seed: int = 42

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError(f"Need n >= 1, got n = {self.n}.")
        if self.exp_class not in EXP_CLASSES:
            raise ArgumentError(
                f"exp_class must be one of {EXP_CLASSES}, got "
                f"{self.exp_class!r}."
            )
        if not self.min_gap > 0:
            raise ArgumentError(
                f"min_gap must be positive, got {self.min_gap}."
            )
        lo, hi = self.real_bounds
        if not lo < hi:
            raise ArgumentError(f"Bad real_bounds {self.real_bounds}.")
        span = hi - lo if self.exp_class == "R" else 2*self.R
        if self.exp_class != "E" and (self.n - 1)*self.min_gap > span:
            raise ArgumentError(
                f"{self.n} exponents with gap {self.min_gap} do not fit in a "
                f"range of width {span}."
            )

    @property
    def R(self):
        if self.imag_range is None:
            return 5.0*self.n
        return float(self.imag_range)


# exponent classes of the checks whose theorem is not about T_n
THEOREM_MODELS = {
    TheoremId.T3_1: {"exp_class": "E", "real_bounds": (-3.0, 0.0)},
    TheoremId.T4_1: {"exp_class": "R", "real_bounds": (0.0, 6.0),
                     "min_gap": 0.5},
    TheoremId.T10_1: {"exp_class": "E", "real_bounds": (-2.0, 0.4)},
    TheoremId.T11_1: {"exp_class": "E", "real_bounds": (-3.0, -0.1)},
    TheoremId.L12_1: {"exp_class": "E", "real_bounds": (0.0, 2.0)},
    TheoremId.L12_5: {"exp_class": "E", "real_bounds": (-2.0, 2.0)},
}


def model_for(theorem, model):
    """ The template model with the exponent class of theorem. """
    overrides = THEOREM_MODELS.get(TheoremId(theorem), {"exp_class": "T"})
    return replace(model, **overrides)


def _threads_from_env():
    raw = os.environ.get("EXPSUM_THREADS", "0")
    try:
        count = int(raw)
    except ValueError:
        raise ArgumentError(
            f"EXPSUM_THREADS must be an integer, got {raw!r}."
        ) from None
    if count < 0:
        raise ArgumentError(f"EXPSUM_THREADS must be >= 0, got {count}.")
    return count or cpu_count()


@dataclass(frozen=True)
class CheckConfig:
    exact_tol: float = 1e-9
    random_tol: float = 1e-6
    kernel_grid: int = 33
    quad: QuadConfig = field(default=DEFAULT_CONFIG)
    threads: int = None  # None reads EXPSUM_THREADS

    @property
    def workers(self):
        return self.threads if self.threads else _threads_from_env()


DEFAULT_CHECK = CheckConfig()


def row_seed(seed, n, sample):
    """ 64-bit seed of one sample, derived from (seed, n, sample). """
    state = np.random.SeedSequence([seed, n, sample]).generate_state(
        1, np.uint64
    )
    return int(state[0])


def _gapped(rng, n, lo, hi, gap):
    """ n sorted values in [lo, hi] with neighbouring gaps >= gap. """
    base = np.sort(rng.uniform(lo, hi - (n - 1)*gap, n))
    return base + gap*np.arange(n)


def sample_exponents(model, rng):
    n = model.n
    if model.exp_class == "T":
        return ExponentSet.imaginary(
            _gapped(rng, n, -model.R, model.R, model.min_gap)
        )
    lo, hi = model.real_bounds
    if model.exp_class == "R":
        return ExponentSet(_gapped(rng, n, lo, hi, model.min_gap))
    re = rng.uniform(lo, hi, n)
    im = rng.uniform(-model.R, model.R, n)
    return ExponentSet(re + 1j*im)


def canonical_exponents(model):
    """ Deterministic set of the model's class: 2 pi i k for T, equispaced
    reals for R, both combined for E.
    """
    k = np.arange(model.n)
    lo, hi = model.real_bounds
    if model.exp_class == "T":
        return ExponentSet.imaginary(2*np.pi*k)
    if model.exp_class == "R":
        return ExponentSet(np.linspace(lo, hi, model.n))
    return ExponentSet(np.linspace(lo, hi, model.n) + 2j*np.pi*k)


def sample_coeffs(n, rng):
    """ Complex standard normal coefficients. """
    return (rng.standard_normal(n) + 1j*rng.standard_normal(n))/math.sqrt(2)


def _require(condition, theorem, exps, what):
    if not condition:
        raise WrongClass(
            f"{theorem.value} needs {what}, got exponents {exps.exponents}."
        )


def _exact_sides(theorem, exps, config, extras):
    n = exps.n
    if theorem is TheoremId.T2_3:
        _require(classify(exps).t_n, theorem, exps,
                 "purely imaginary exponents")
        G = gram(exps, NormSpec())
        lhs = max(
            christoffel_sup(G, exps, PointEval(y)).value
            for y in np.linspace(0.0, 1.0, config.kernel_grid)
        )
        return lhs, rhs_bound(theorem, n)
    if theorem is TheoremId.T3_1:
        _require(classify(exps).e_minus, theorem, exps, "Re(lambda) <= 0")
        return truncation_sup(exps, 9*n), rhs_bound(theorem, n)
    if theorem is TheoremId.T4_1:
        if not isinstance(exps, MuntzPowers):
            _require(
                classify(exps).e_plus and not np.any(exps.exponents.imag),
                theorem, exps, "real exponents >= 0",
            )
        G = gram(exps, NormSpec())
        return (
            christoffel_sup(G, exps, PointEval(0.0)).value,
            rhs_bound(theorem, n),
        )
    if theorem in MARKOV_VARIANTS:
        lam = exps.exponents
        if theorem is TheoremId.T10_1:
            _require(np.all(lam.real < 0.5), theorem, exps, "Re(lambda) < 1/2")
            spec = NormSpec.laguerre(1.0)
        elif theorem is TheoremId.T10_2:
            _require(classify(exps).t_n, theorem, exps,
                     "purely imaginary exponents")
            spec = NormSpec.laguerre(1.0)
        else:
            _require(np.all(lam.real < 0), theorem, exps, "Re(lambda) < 0")
            spec = NormSpec.laguerre(0.0)
        return markov_sup(exps, spec).value, rhs_bound(theorem, n, exps)
    # L12_5
    y = extras.get("y", 0.5)
    delta = extras.get("delta", 0.5)
    G = gram(exps, NormSpec(y - delta, y + delta))
    return (
        christoffel_sup(G, exps, PointEval(y)).value,
        rhs_bound(theorem, n, delta=delta),
    )


def check_exact(theorem, exps, seed=0, config=DEFAULT_CHECK, **extras):
    """ Compare the exact sup on the span of exps with the constant.

    T2_6 is a lower bound over all of T_n and is checked on its polynomial
    limit configuration with exps.n terms. MuntzPowers are accepted for T4_1
    as the limit configuration of exponents tending to zero.

    Args:
        theorem: one of EXACT_CHECKS
        exps: ExponentSet of the theorem's class
        seed: seed recorded in the report
        config: CheckConfig

    Kwargs:
        y, delta: point and half width (L12_5), default 0.5, 0.5

    Returns:
        CheckReport; numerical failures give an Inconclusive report
    """
    theorem = TheoremId(theorem)
    if theorem not in EXACT_CHECKS:
        raise ArgumentError(f"{theorem.value} has no exact check.")
    n = exps.n
    if theorem is TheoremId.T2_6:
        return witness(theorem, n).report(seed)
    tol = KERNEL_TOL if isinstance(exps, MuntzPowers) else config.exact_tol
    try:
        lhs, rhs = _exact_sides(theorem, exps, config, extras)
    except (NumericalFailure, DivergentIntegral) as err:
        logger.warning("%s n=%d seed=%d inconclusive: %s",
                       theorem.value, n, seed, err)
        return CheckReport.inconclusive(theorem, n, seed, info=str(err))
    report = CheckReport(theorem, n, lhs, rhs, seed=seed, tol=tol)
    if report.status is Status.VIOLATED:
        logger.warning("violated: %r", report)
    return report


def _draw(theorem, rng):
    """ Theorem parameters of one random sample. """
    if theorem in (TheoremId.T2_4, TheoremId.T2_5):
        q = rng.uniform(0.5, 2.0)
        if theorem is TheoremId.T2_5:
            return {"q": q, "p": q + (6.0 - rng.uniform(0.0, 6.0))}
        return {"q": q}
    if theorem in (TheoremId.T2_9, TheoremId.T2_10):
        return {"q": 8.0 - rng.uniform(0.0, 6.0)}
    if theorem is TheoremId.L12_1:
        return {"alpha": rng.uniform(0.1, 1.0), "beta": rng.uniform(0.1, 1.0)}
    if theorem is TheoremId.L12_5:
        return {"y": rng.uniform(0.0, 1.0),
                "delta": 1.0 - rng.uniform(0.0, 0.9)}
    return {}


def _random_sides(theorem, f, params, cfg):
    n = f.n
    unit = NormSpec()
    derivative = FunctionWrapper(f).derivative
    if theorem is TheoremId.T2_1:
        lhs = abs(f(0.0))/lq_norm(f, NormSpec(0.0, 1.0, 2.0*n), cfg)
    elif theorem is TheoremId.T2_4:
        lhs = sup_norm(f, 0.0, 1.0, cfg)[0]/lq_norm(
            f, NormSpec(q=params["q"]), cfg
        )
    elif theorem is TheoremId.T2_5:
        lhs = lq_norm(f, NormSpec(q=params["p"]), cfg)/lq_norm(
            f, NormSpec(q=params["q"]), cfg
        )
    elif theorem is TheoremId.T2_9:
        lhs = abs(f(0.0))/lq_norm(
            f, NormSpec(0.0, 1.0, 2.0*n, params["q"]), cfg
        )
    elif theorem is TheoremId.T2_10:
        lhs = sup_norm(f, 0.0, 1.0, cfg)[0]/lq_norm(
            f, NormSpec(q=params["q"]), cfg
        )
    elif theorem is TheoremId.T3_2:
        lhs = abs(f(0.0))/lq_norm(f, NormSpec(0.0, 1.0, 9.0*n), cfg)
    elif theorem is TheoremId.T5_1:
        lhs = abs(derivative(0.0))/lq_norm(f, NormSpec(0.0, 1.0, 9.0*n), cfg)
    elif theorem is TheoremId.T5_2:
        lhs = sup_norm(derivative, 0.0, 1.0, cfg)[0]/lq_norm(f, unit, cfg)
    elif theorem is TheoremId.T8_1:
        lhs = abs(derivative(0.0))/sup_norm(f, -1.0, 1.0, cfg)[0]
    elif theorem is TheoremId.T9_1:
        top = sup_norm(f, 0.0, 1.0, cfg)[0]
        if params.get("form", "uniform") == "point":
            lhs = abs(derivative(0.0))/top
        else:
            lhs = sup_norm(derivative, 0.0, 1.0, cfg)[0]/top
    elif theorem is TheoremId.L12_1:
        alpha, beta = params["alpha"], params["beta"]
        lhs = abs(f(0.0))/sup_norm(f, alpha, alpha + beta, cfg)[0]
    else:
        y, delta = params["y"], params["delta"]
        lhs = abs(f(y))/lq_norm(f, NormSpec(y - delta, y + delta), cfg)
    rhs = rhs_bound(theorem, n, f.exps, **params)
    return lhs, rhs


def check_sample(theorem, model, seed, config=DEFAULT_CHECK, sample=0,
                 **extras):
    """ One random-coefficient check drawn from default_rng(seed).

    Args:
        theorem: one of RANDOM_CHECKS
        model: RandomModel, its class is replaced by the theorem's
        seed: 64-bit seed of the sample (see row_seed)
        config: CheckConfig
        sample: sample index recorded in the report

    Returns:
        CheckReport
    """
    theorem = TheoremId(theorem)
    if theorem not in RANDOM_CHECKS:
        raise ArgumentError(f"{theorem.value} has no random check.")
    model = model_for(theorem, model)
    rng = np.random.default_rng(seed)
    exps = sample_exponents(model, rng)
    f = ExpSum(exps, sample_coeffs(model.n, rng))
    params = {**_draw(theorem, rng), **extras}
    try:
        lhs, rhs = _random_sides(theorem, f, params, config.quad)
    except (NumericalFailure, DivergentIntegral) as err:
        logger.warning("%s n=%d seed=%d inconclusive: %s",
                       theorem.value, model.n, seed, err)
        return CheckReport.inconclusive(
            theorem, model.n, seed, sample=sample, witness=f, info=str(err)
        )
    report = CheckReport(
        theorem, model.n, lhs, rhs, seed=seed, tol=config.random_tol,
        witness=f, sample=sample, info=params or None,
    )
    if report.status is Status.VIOLATED:
        if theorem in FLAGGED:
            logger.warning(
                "violated %s with constant 27 (squared form gives 729): %r",
                theorem.value, report,
            )
        else:
            logger.warning("violated: %r", report)
    return report


def check_random(theorem, model, samples, config=DEFAULT_CHECK, **extras):
    """ check_sample for sample indices 0..samples-1 of model.n. """
    if samples < 1:
        raise ArgumentError(f"Need samples >= 1, got {samples}.")
    return [
        check_sample(
            theorem, model, row_seed(model.seed, model.n, idx), config,
            sample=idx, **extras
        )
        for idx in range(samples)
    ]


def _exact_cell(theorem, model, idx, samples, config, extras):
    model = model_for(theorem, model)
    if samples == 0:
        seed = row_seed(model.seed, model.n, 0)
        exps = canonical_exponents(model)
    else:
        seed = row_seed(model.seed, model.n, idx)
        exps = sample_exponents(model, np.random.default_rng(seed))
    report = check_exact(theorem, exps, seed, config, **extras)
    report.sample = idx
    return report


def sweep(theorem, n_list, model=RandomModel(), samples=100, mode=None,
          config=DEFAULT_CHECK, **extras):
    """ Checks over the cross product of n_list and sample indices.

    Args:
        theorem: TheoremId with an exact or random check
        n_list: values of n
        model: RandomModel template; n is replaced for each row
        samples: samples per n; 0 checks the canonical set once per n
            (exact mode only)
        mode: "exact" or "random"; default exact when available
        config: CheckConfig

    Returns:
        SweepResult, rows ordered by (n, sample)
    """
    theorem = TheoremId(theorem)
    if mode is None:
        mode = "exact" if theorem in EXACT_CHECKS else "random"
    if mode == "exact" and theorem not in EXACT_CHECKS:
        raise ArgumentError(f"{theorem.value} has no exact check.")
    if mode == "random" and theorem not in RANDOM_CHECKS:
        raise ArgumentError(f"{theorem.value} has no random check.")
    if mode not in ("exact", "random"):
        raise ArgumentError(f"Unknown mode {mode!r}.")
    if samples < 0 or (samples == 0 and mode == "random"):
        raise ArgumentError(
            f"Bad number of samples {samples} for {mode} mode."
        )

    cells = [
        (replace(model, n=int(n)), idx)
        for n in sorted(n_list)
        for idx in range(max(samples, 1))
    ]

    def _run(cell):
        cell_model, idx = cell
        if mode == "exact":
            return _exact_cell(theorem, cell_model, idx, samples, config,
                               extras)
        return check_sample(
            theorem, cell_model, row_seed(cell_model.seed, cell_model.n, idx),
            config, sample=idx, **extras
        )

    workers = min(config.workers, len(cells))
    logger.debug("sweep %s: %d cells on %d threads",
                 theorem.value, len(cells), workers)
    if workers <= 1:
        reports = [_run(cell) for cell in cells]
    else:
        with ThreadPool(workers) as pool:
            reports = pool.map(_run, cells)
    result = SweepResult(theorem, reports)
    logger.debug("%r", result)
    return result


def _legendre_kernel(n, y):
    """ K(x, y) = sum_{k<n} p_k(y) p_k(x) for orthonormal Legendre p_k on
    [0, 1], as a Legendre series on [0, 1].
    """
    k = np.arange(n)
    values = np.polynomial.legendre.legval(2*y - 1, np.eye(n))
    return np.polynomial.Legendre((2*k + 1)*values, domain=[0, 1])


def _trend_measure(theorem, n, cfg, extras):
    if theorem is TheoremId.T2_7:
        q = extras.get("q", 2.0)
        K = _legendre_kernel(n, 0.0)
        return abs(float(K(0.0)))/lq_norm(K, NormSpec(q=q), cfg)
    y = extras.get("y", 0.5)
    return math.sqrt(abs(float(_legendre_kernel(n, y)(y))))


def _trend_expected(theorem, extras):
    if theorem is TheoremId.T2_7:
        return 2/extras.get("q", 2.0)
    y = extras.get("y", 0.5)
    return 1.0 if y in (0.0, 1.0) else 0.5


def check_trend(theorem, n_list=(4, 8, 16), config=DEFAULT_CHECK, **extras):
    """ Fit measured ~ constant * n**exponent for statements whose absolute
    constant is unspecified. The measured quantity is the polynomial-limit
    ratio: |K(0, 0)| / ||K(., 0)||_q (T2_7), and the kernel value
    K(y, y)^(1/2) on [0, 1] (T7_2).

    Returns:
        TrendResult; the constant is reported, never asserted
    """
    theorem = TheoremId(theorem)
    if theorem not in TREND_CHECKS:
        raise ArgumentError(f"{theorem.value} has no trend check.")
    n_list = sorted(n_list)
    if len(n_list) < 2:
        raise ArgumentError("A trend needs at least two values of n.")
    measured = [
        _trend_measure(theorem, n, config.quad, extras) for n in n_list
    ]
    design = np.column_stack([np.log(n_list), np.ones(len(n_list))])
    fit = least_squares(design, np.log(measured)).solve_minimum()["x*"]
    exponent, intercept = (float(np.real(v)) for v in fit.ravel())
    return TrendResult(
        theorem, n_list, measured, exponent, math.exp(intercept),
        _trend_expected(theorem, extras),
    )


def write_csv(reports, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CheckReport.FIELDS)
    for report in reports:
        writer.writerow(report.to_row())


def write_json(reports, fh):
    json.dump([report.to_dict() for report in reports], fh, indent=1)
    fh.write("\n")
