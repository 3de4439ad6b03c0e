import numpy as np


class FunctionWrapper:
    """ Functions of one real variable handed to quadrature, sup-norm search
    and the checks are wrapped. This wrapper counts the number of times the
    function and its derivative have been evaluated.

    The derivative is, in order of preference, the one given, the exact one of
    an object with a `deriv()` method (ExpSum, MuntzPolynomial and the numpy
    polynomial series), or a central difference.
    """
    def __init__(self, func, deriv=None):
        if not callable(func):
            raise TypeError(f"Function must be callable, got {type(func)}")
        self._f = func
        if deriv is not None:
            self._deriv = deriv
        elif hasattr(func, "deriv"):
            self._deriv = func.deriv()
        else:
            self._deriv = self._create_deriv(self.f)
            # built on self.f so the difference quotients are counted
        self.nfev = 0
        self.ndev = 0

    def f(self, x):
        self.nfev += 1
        return self._f(x)

    def derivative(self, x):
        self.ndev += 1
        return self._deriv(x)

    __call__ = f

    def _create_deriv(self, func):
        """ Create a function which returns the derivative of func using the
        central difference method.

        Args:
            func: function taking real scalars or arrays and returning
                complex values of the same shape

        Returns:
            _deriv: a function with argument 'x' which returns the derivative
                of func at x.
        """
        def _deriv(x):
            """ Numerical derivative using central difference. """
            x = np.asarray(x, dtype=float)
            delta = 1E-6*np.maximum(np.abs(x), 1.0)  # scale step-size
            return (func(x + delta) - func(x - delta)) / (2*delta)
        return _deriv
