from src.result import LineSearchResult
from src.wrappers import FunctionWrapper


class LineSearch:
    """ Class for performing line search on an interval of the real line.

    Examples:
    >>> objective = FunctionWrapper(lambda t: -abs(f(t))**2)
    >>> ls = LineSearch(objective)
    >>> lsresult = ls.goldensection(lo=0.1, hi=0.2)
    """
    def __init__(self, objective):
        if isinstance(objective, FunctionWrapper):
            self._objective = objective
        elif callable(objective):
            self._objective = FunctionWrapper(objective)
            # attempt to make objective wrapper
        else:
            raise TypeError(
                f"Objective must be callable, got {type(objective)}"
            )

    def goldensection(self, lo, hi, precision=1e-12):
        """ Golden-section search for a minimum of the objective on [lo, hi].
        Assumes the objective is unimodal on the interval.

        Args:
            lo: left end of the bracket
            hi: right end of the bracket
            precision: width of the final bracket

        Returns:
            LineSearchResult
        """
        if not lo < hi:
            raise ValueError(f"Bad bracket [{lo}, {hi}].")
        if precision <= 0:
            raise ValueError(f"Precision must be positive, got {precision}.")

        iphi = (5**0.5 - 1) / 2  # 1/phi
        iphi2 = (3 - 5**0.5) / 2  # 1/phi^2

        def _gs(x1, x4, h=None, x2=None, x3=None, fx2=None, fx3=None):
            # We are going to divide the search space into three sections with
            # boundaries (x1, x2, x3, x4) and perform golden section search.
            # Function values are saved between iterations.
            if h is None:
                h = x4 - x1
            if abs(h) <= precision:
                return x1, x4
            if x2 is None:
                x2 = x1 + iphi2*h
            if x3 is None:
                x3 = x1 + iphi*h
            if fx2 is None:
                fx2 = self._objective.f(x2)
            if fx3 is None:
                fx3 = self._objective.f(x3)

            if fx2 < fx3:
                return _gs(x1, x3, h=h*iphi, x3=x2, fx3=fx2)
            else:
                return _gs(x2, x4, h=h*iphi, x2=x3, fx2=fx3)

        x1, x4 = _gs(lo, hi)
        xopt = (x1 + x4) / 2
        return LineSearchResult(
            success=True,
            x=xopt,
            fx=self._objective.f(xopt),
            width=x4 - x1,
        )
