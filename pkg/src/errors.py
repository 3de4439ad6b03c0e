class NumericalFailure(RuntimeError):
    """ Base class for failures of a numerical procedure. Checks report these
    as Inconclusive rather than as a violated inequality.
    """


class QuadratureFailure(NumericalFailure):
    pass


class NotPositiveDefinite(NumericalFailure):
    pass


class EigenFailure(NumericalFailure):
    pass


class ConditionExceeded(NumericalFailure):
    """ Raised when a solve is requested on a matrix whose condition number is
    beyond what double precision can resolve. The measured condition number is
    kept in `condition`.
    """
    def __init__(self, condition, limit=None):
        self.condition = condition
        self.limit = limit
        super().__init__(
            f"Condition number {condition:.3e} exceeds limit {limit:.3e}."
            if limit is not None else
            f"Condition number {condition:.3e} exceeds limit."
        )


class MinimaxStall(NumericalFailure):
    """ Lawson iteration stopped improving before the weights converged.
    `result` holds the best OptimisationResult found.
    """
    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)


class OverflowGuard(NumericalFailure):
    pass


class DegenerateExponents(ValueError):
    pass


class DivergentIntegral(ValueError):
    pass


class WrongClass(ValueError):
    pass


class ArgumentError(ValueError):
    pass
