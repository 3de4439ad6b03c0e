import math
from enum import Enum


class LineSearchResult:
    """ A simple structure for storing the results of a golden-section search
    on an interval.

    'x': argmin of the objective found on the interval
    'fx': objective value at x
    'width': width of the final bracket
    """
    def __init__(self, success, x, fx, width):
        """
        Args:
            success: line search terminated successfully
            x: result of line search
            fx: objective at x
            width: width of the final bracket
        """
        self.success = success
        self.x = x
        self.fx = fx
        self.width = width

    def __repr__(self):
        return (
            f"success: {self.success}\n"
            f"x*: {self.x}\n"
            f"f(x*): {self.fx}\n"
            f"width: {self.width}\n"
        )


class OptimisationResult:
    """ A simple structure for storing the results of optimisation procedures.
    """
    def __init__(self, success, x, niter, nfev, **kwargs):
        """
        Args:
            success: optimisation terminated successfully
            x: result of optimisation
            niter: number of iterations of optimisation procedure
            nfev: number of subproblem solves performed

        Kwargs:
            fun: objective value at x
            bound: certified bound on the optimal objective
            info: additional information about the optimisation
            path: list of intermediate objective values
        """
        self.success = success
        self.x = x
        self.niter = niter
        self.nfev = nfev
        self.fun = kwargs.get("fun")
        self.bound = kwargs.get("bound")
        self.info = kwargs.get("info")
        self.solution_path = kwargs.get("path")

    def __repr__(self):
        if self.solution_path is not None:
            solution_path_status = "available"
        else:
            solution_path_status = "unavailable"
        return (
            f"success: {self.success}\n"
            f"x*: \n{self.x}\n"
            f"f(x*): {self.fun}\n"
            f"bound: {self.bound}\n"
            f"niter: {self.niter}\n"
            f"nfev: {self.nfev}\n"
            f"info: {self.info}\n"
            f"solution path: {solution_path_status}"
        )


class QuadResult:
    """ Result of composite Gauss-Legendre quadrature. """
    def __init__(self, value, panels, error, nfev):
        self.value = value
        self.panels = panels
        self.error = error
        self.nfev = nfev

    def __repr__(self):
        return (
            f"value: {self.value}\n"
            f"panels: {self.panels}\n"
            f"error: {self.error}\n"
            f"nfev: {self.nfev}\n"
        )


class ExtremalResult:
    """ Sup of a ratio over a finite dimensional space, with the function
    attaining it (unit norm).
    """
    def __init__(self, value, coeffs, system, gram_condition, **kwargs):
        """
        Args:
            value: the sup ratio
            coeffs: coefficients of the extremal function in `system`
            system: ExponentSet or MuntzPowers the coefficients refer to
            gram_condition: condition number of the Gram matrix

        Kwargs:
            witness: the extremal function as an ExpSum or MuntzPolynomial
            info: additional information
        """
        self.value = value
        self.coeffs = coeffs
        self.system = system
        self.gram_condition = gram_condition
        self.witness = kwargs.get("witness")
        self.info = kwargs.get("info")

    def __repr__(self):
        return (
            f"value: {self.value}\n"
            f"coeffs: \n{self.coeffs}\n"
            f"gram condition: {self.gram_condition:.3e}\n"
            f"info: {self.info}\n"
        )


class Status(Enum):
    HOLDS = "Holds"
    VIOLATED = "Violated"
    INCONCLUSIVE = "Inconclusive"


def _fmt(x):
    return format(x, ".17g")


def _finite_or_none(x):
    return float(x) if math.isfinite(x) else None


class CheckReport:
    """ Outcome of checking one inequality on one configuration.

    The inequality checked is lhs <= rhs. Lower bounds are stored with the
    bound as lhs and the achieved value as rhs.
    """
    FIELDS = ("theorem", "n", "seed", "lhs", "rhs", "margin", "status")

    def __init__(self, theorem, n, lhs, rhs, seed=0, tol=1e-9, **kwargs):
        """
        Args:
            theorem: TheoremId
            n: number of terms
            lhs: measured (or bounding) side
            rhs: bound (or achieved) side
            seed: seed reproducing the configuration
            tol: relative tolerance of the Holds decision

        Kwargs:
            status: force a status, e.g. Inconclusive after a failure
            witness: function realising lhs
            sample: sample index within a sweep
            info: additional information
        """
        self.theorem = theorem
        self.n = n
        self.lhs = lhs
        self.rhs = rhs
        self.seed = seed
        self.tol = tol
        self.witness = kwargs.get("witness")
        self.sample = kwargs.get("sample", 0)
        self.info = kwargs.get("info")
        status = kwargs.get("status")
        self.status = status if status is not None else self._decide()

    @property
    def margin(self):
        return self.rhs - self.lhs

    def _decide(self):
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            return Status.INCONCLUSIVE
        if self.margin >= -self.tol*abs(self.rhs):
            return Status.HOLDS
        return Status.VIOLATED

    @classmethod
    def inconclusive(cls, theorem, n, seed=0, **kwargs):
        return cls(
            theorem, n, math.nan, math.nan, seed=seed,
            status=Status.INCONCLUSIVE, **kwargs,
        )

    def to_dict(self):
        """ JSON-ready fields; non-finite numbers become None. """
        return {
            "theorem": self.theorem.value,
            "n": self.n,
            "seed": self.seed,
            "lhs": _finite_or_none(self.lhs),
            "rhs": _finite_or_none(self.rhs),
            "margin": _finite_or_none(self.margin),
            "status": self.status.value,
        }

    def to_row(self):
        return [
            self.theorem.value, str(self.n), str(self.seed),
            _fmt(self.lhs), _fmt(self.rhs), _fmt(self.margin),
            self.status.value,
        ]

    def __repr__(self):
        return (
            f"{self.theorem.value} n={self.n} seed={self.seed}: "
            f"lhs={self.lhs:.6g} rhs={self.rhs:.6g} "
            f"margin={self.margin:.3g} {self.status.value}"
        )


class WitnessResult:
    """ A construction realising a lower bound. """
    def __init__(self, theorem, n, function, achieved, bound, **kwargs):
        """
        Args:
            theorem: TheoremId
            n: number of terms
            function: ExpSum, MuntzPolynomial or numpy polynomial series
            achieved: ratio attained by function
            bound: lower bound the ratio must meet

        Kwargs:
            exps: exponent set of the function, when it has one
            info: additional information
            tol: relative tolerance of the comparison, default 1e-9
        """
        self.theorem = theorem
        self.n = n
        self.function = function
        self.achieved = achieved
        self.bound = bound
        self.exps = kwargs.get("exps")
        self.info = kwargs.get("info")
        self.tol = kwargs.get("tol", 1e-9)

    @property
    def holds(self):
        return self.achieved >= self.bound - self.tol*abs(self.bound)

    def report(self, seed=0):
        return CheckReport(
            self.theorem, self.n, self.bound, self.achieved, seed=seed,
            tol=self.tol, witness=self.function, info=self.info,
        )

    def __repr__(self):
        return (
            f"{self.theorem.value} n={self.n}: achieved {self.achieved:.10g} "
            f">= {self.bound:.10g}: {self.holds}"
        )


class TrendResult:
    """ Power-law fit measured ~ constant * n**exponent. """
    def __init__(self, theorem, n_list, measured, exponent, constant,
                 expected):
        self.theorem = theorem
        self.n_list = list(n_list)
        self.measured = list(measured)
        self.exponent = exponent
        self.constant = constant
        self.expected = expected

    def within(self, slack=0.3):
        return abs(self.exponent - self.expected) <= slack

    def __repr__(self):
        return (
            f"{self.theorem.value}: exponent {self.exponent:.4f} "
            f"(expected {self.expected:.4f}), constant {self.constant:.4g}"
        )


class SweepResult:
    """ Reports of a sweep in (n, sample) order with the smallest margin per
    n. Inconclusive rows do not enter the minimum.
    """
    def __init__(self, theorem, reports):
        self.theorem = theorem
        self.reports = list(reports)

    @property
    def min_margin(self):
        out = {}
        for report in self.reports:
            if report.status is Status.INCONCLUSIVE:
                continue
            best = out.get(report.n)
            if best is None or report.margin < best:
                out[report.n] = report.margin
        return out

    def count(self, status):
        return sum(report.status is status for report in self.reports)

    def __iter__(self):
        return iter(self.reports)

    def __len__(self):
        return len(self.reports)

    def __repr__(self):
        margins = ", ".join(
            f"n={n}: {m:.3g}" for n, m in sorted(self.min_margin.items())
        )
        return (
            f"{self.theorem.value}: {len(self)} rows, "
            f"{self.count(Status.VIOLATED)} violated, "
            f"{self.count(Status.INCONCLUSIVE)} inconclusive; "
            f"min margin {margins}"
        )
