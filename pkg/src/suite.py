""" The acceptance table: every quantitative claim checked in one run. """
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.checks import (
    DEFAULT_CHECK, RANDOM_CHECKS, RandomModel, check_random, check_trend,
    sweep
)
from src.core import ExponentSet, NormSpec
from src.errors import NumericalFailure
from src.extremal import (
    DerivEval, MuntzPowers, PointEval, christoffel_sup, deriv_bound_closed,
    gram, markov_sup, monomial_gram, point_bound_closed, truncation_sup
)
from src.linalg import CONDITION_LIMIT, condition
from src.minimax import sigma_minimax
from src.result import Status
from src.theorems import (
    TheoremId, derivative_sum, legendre_shifted, sigma_closed
)
from src.witnesses import witness

logger = logging.getLogger(__name__)

FUZZ = sorted(RANDOM_CHECKS - {TheoremId.T8_1}, key=lambda t: t.value)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"{self.number:>2} {mark}  {self.title}: {self.detail}"


def _rel(x, y):
    return abs(x - y)/max(abs(y), 1e-300)


def _kernel_at_one():
    worst = 0.0
    for n in range(1, 9):
        powers = MuntzPowers(np.arange(n))
        value = christoffel_sup(monomial_gram(powers), powers, PointEval(1))
        worst = max(worst, _rel(value.value, n),
                    _rel(point_bound_closed(powers), n))
    return worst <= 1e-7, f"max relative error {worst:.2e} for n <= 8"


def _derivative_triple():
    worst = 0.0
    for n in range(1, 7):
        powers = MuntzPowers(np.arange(n))
        kernel = christoffel_sup(
            monomial_gram(powers), powers, DerivEval(0)
        ).value
        closed = deriv_bound_closed(powers)
        legendre = math.sqrt(sum(legendre_shifted(k)[1]**2 for k in range(n)))
        reference = derivative_sum(n)
        for value in (kernel, closed, legendre):
            worst = max(worst, _rel(value, reference) if reference else value)
    return worst <= 1e-6, f"max relative disagreement {worst:.2e} for n <= 6"


def _sweep_clean(theorem, n_list, samples, mode=None):
    result = sweep(theorem, n_list, RandomModel(), samples, mode=mode)
    violated = result.count(Status.VIOLATED)
    inconclusive = result.count(Status.INCONCLUSIVE)
    return violated, inconclusive, len(result)


def _truncation(samples):
    violated, inconclusive, rows = _sweep_clean(
        TheoremId.T3_1, range(1, 7), samples
    )
    scalar = truncation_sup(ExponentSet([0.0]), 9.0)
    err = _rel(scalar, 1/(1 - math.exp(-9)))
    passed = violated == 0 and err <= 1e-10
    return passed, (
        f"{violated} violated, {inconclusive} inconclusive of {rows}; "
        f"scalar case error {err:.1e}"
    )


def _envelope(samples):
    violated, inconclusive, rows = _sweep_clean(
        TheoremId.T2_3, range(2, 11), samples
    )
    return violated == 0, (
        f"{violated} violated, {inconclusive} inconclusive of {rows}"
    )


def _markov(samples):
    parts, passed = [], True
    for theorem in (TheoremId.T10_1, TheoremId.T10_2, TheoremId.T11_1):
        violated, inconclusive, rows = _sweep_clean(
            theorem, range(1, 9), samples
        )
        passed &= violated == 0
        parts.append(f"{theorem.value} {violated}/{inconclusive}/{rows}")
    single = ExponentSet.imaginary([7.0])
    value = markov_sup(single, NormSpec.laguerre(1.0)).value
    err = abs(value - 7.0)
    passed &= err <= 1e-10
    parts.append(f"n=1 error {err:.1e}")
    return passed, "; ".join(parts)


def _witnesses():
    failures = []
    for n in range(1, 11):
        res = witness(TheoremId.T9_2, n)
        if _rel(res.achieved, 2*n**2) > 1e-8 or not res.holds:
            failures.append(f"T9_2 n={n}")
    for n in range(1, 9):
        res = witness(TheoremId.T2_6, n)
        if _rel(res.achieved, n) > 1e-7:
            failures.append(f"T2_6 n={n}")
    for lam in (5.0, 10.0, 20.0):
        res = witness(TheoremId.T8_1, 2, lam=lam)
        if _rel(res.achieved, lam) > 1e-6 or not res.holds:
            failures.append(f"T8_1 lam={lam}")
    return not failures, ", ".join(failures) or "all constructions meet bounds"


def _sigma():
    worst = 0.0
    for k in range(1, 7):
        value = sigma_minimax(k).fun
        worst = max(worst, _rel(value, sigma_closed(k)))
    k1 = abs(sigma_minimax(1, grid=1024).fun - 2.0)
    return worst <= 1e-2 and k1 <= 1e-3, (
        f"max relative error {worst:.2e} for k <= 6"
    )


def _fuzz(samples):
    violated = inconclusive = rows = 0
    for theorem in FUZZ:
        for n in (2, 5, 10):
            reports = check_random(theorem, RandomModel(n=n), samples)
            rows += len(reports)
            violated += sum(r.status is Status.VIOLATED for r in reports)
            inconclusive += sum(
                r.status is Status.INCONCLUSIVE for r in reports
            )
    rate = inconclusive/rows
    return violated == 0 and rate <= 0.02, (
        f"{violated} violated, inconclusive rate {rate:.1%} over {rows} rows"
    )


COMPARISON_SPECS = (NormSpec(0.0, 1.0), NormSpec(1.0, 2.0))
COMPARISON_LIMIT = CONDITION_LIMIT/10


def _admissible(exps, limit):
    return all(
        condition(gram(exps, spec)) <= limit for spec in COMPARISON_SPECS
    )


def comparison_pair(rng, n, gap=0.75, limit=COMPARISON_LIMIT, attempts=200):
    """ Real exponent sets Delta <= Gamma componentwise, both increasing,
    whose Gram matrices on [0, 1] and [1, 2] have condition <= limit. Draws
    over the limit are replaced.

    Returns:
        (delta, gamma, replaced)
    """
    for replaced in range(attempts):
        base = np.sort(rng.uniform(-3.0, 3.0 - (n - 1)*gap, n))
        delta = base + gap*np.arange(n)
        gamma = delta + np.sort(rng.uniform(0.0, 1.0, n))
        if _admissible(ExponentSet(delta), limit) and \
                _admissible(ExponentSet(gamma), limit):
            return ExponentSet(delta), ExponentSet(gamma), replaced
    raise NumericalFailure(
        f"No pair of {n} exponents with gap {gap} and Gram condition <= "
        f"{limit:.1e} in {attempts} draws."
    )


def comparison_sup(exps, spec, functional):
    return christoffel_sup(gram(exps, spec), exps, functional).value


def comparison_holds(delta, gamma, tol=1e-8):
    """ Point and derivative sups at points right of [0, 1] grow with the
    exponents, at points left of [1, 2] they shrink (derivative claims under
    their sign conditions on the largest and smallest exponent).

    Returns:
        list of failed claims
    """
    failures = []
    right, left = NormSpec(0.0, 1.0), NormSpec(1.0, 2.0)
    claims = [(right, PointEval(2.0), True), (left, PointEval(0.0), False)]
    if delta[-1].real >= 0:
        claims.append((right, DerivEval(2.0), True))
    if gamma[0].real <= 0:
        claims.append((left, DerivEval(0.0), False))
    for spec, functional, grows in claims:
        small = comparison_sup(delta, spec, functional)
        large = comparison_sup(gamma, spec, functional)
        lo, hi = (small, large) if grows else (large, small)
        if lo > hi*(1 + tol):
            failures.append(
                f"{functional} on [{spec.a}, {spec.b}]: {lo:.12g} > {hi:.12g}"
            )
    return failures


def comparison_criterion(pairs, seed=12):
    """ Check comparison monotonicity on `pairs` admissible pairs, n cycling
    through 1..6. Every requested pair is checked; a pair that cannot be
    drawn raises.

    Returns:
        (passed, detail)
    """
    rng = np.random.default_rng(seed)
    failures, replaced = [], 0
    for idx in range(pairs):
        delta, gamma, extra = comparison_pair(rng, 1 + idx % 6)
        replaced += extra
        failures += comparison_holds(delta, gamma)
    return not failures, (
        f"{len(failures)} failures over {pairs} pairs, {replaced} "
        f"ill-conditioned draws replaced"
    )


def _trends():
    parts, passed = [], True
    for theorem in (TheoremId.T2_7, TheoremId.T7_2):
        res = check_trend(theorem, config=DEFAULT_CHECK)
        passed &= res.within(0.3)
        parts.append(repr(res))
    return passed, "; ".join(parts)


def run_suite(samples=None):
    """ Run the acceptance table.

    Args:
        samples: samples per cell for the random parts; None uses the
            standard counts (50 per sweep cell, 100 per fuzz cell, 200
            comparison pairs)

    Returns:
        list of Criterion
    """
    def _count(default):
        return default if samples is None else samples

    table = [
        (1, "kernel at x=1 on powers 0..n-1 equals n", _kernel_at_one),
        (2, "derivative constant, three computations agree",
         _derivative_triple),
        (3, "infinite-finite range worst case",
         lambda: _truncation(_count(50))),
        (4, "pointwise envelope pi n / 2", lambda: _envelope(_count(50))),
        (5, "Laguerre and unweighted Markov bounds",
         lambda: _markov(_count(50))),
        (6, "witness constructions", _witnesses),
        (7, "sigma_k minimax against closed form", _sigma),
        (8, "random inequality fuzzing", lambda: _fuzz(_count(100))),
        (9, "comparison monotonicity",
         lambda: comparison_criterion(_count(200))),
        (10, "trend exponents", _trends),
    ]
    criteria = []
    for number, title, run in table:
        try:
            passed, detail = run()
        except Exception as err:
            logger.exception("criterion %d failed to run", number)
            passed, detail = False, f"{type(err).__name__}: {err}"
        criteria.append(Criterion(number, title, bool(passed), detail))
        logger.info("%s", criteria[-1].line())
    return criteria


def summary(criteria):
    lines = [c.line() for c in criteria]
    passed = sum(c.passed for c in criteria)
    lines.append(f"{passed}/{len(criteria)} criteria passed")
    return "\n".join(lines)
