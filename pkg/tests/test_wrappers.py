import numpy as np
from pytest import approx, fixture, raises

import context  # noqa
from src.core import ExpSum
from src.wrappers import FunctionWrapper


@fixture()
def rng():
    rng = np.random.default_rng(20210305)
    return rng


class TestCreateDerivative:
    """ This is a class containing test cases for the _create_deriv function
    which creates a central difference derivative.

    [x] - Real polynomials f: R -> R
    [x] - Complex valued functions f: R -> C
    [x] - Vectorised evaluation on arrays
    [ ] - Reasonable behaviour for unfriendly functions (cusps of |f|)
    """
    def _random_polynomial(self, rng):
        degree = rng.integers(2, 5)
        return np.polynomial.Polynomial(rng.uniform(-1, 1, degree + 1))

    def test_polynomials(self, rng):
        """ Difference quotients of random polynomials match their exact
        derivatives.
        """
        for _ in range(50):
            poly = self._random_polynomial(rng)
            wrapper = FunctionWrapper(lambda x, p=poly: p(x))
            # a lambda has no deriv(), so the difference quotient is used
            dpoly = poly.deriv()
            for x in rng.uniform(-10, 10, 10):
                assert wrapper.derivative(x) == approx(dpoly(x), rel=1e-5,
                                                       abs=1e-6)

    def test_complex_valued(self):
        wrapper = FunctionWrapper(lambda t: np.exp(1j*t))
        for t in (-1.0, 0.0, 0.3, 2.5):
            assert wrapper.derivative(t) == approx(1j*np.exp(1j*t), rel=1e-8)

    def test_vectorised(self, rng):
        wrapper = FunctionWrapper(np.sin)
        t = rng.uniform(-3, 3, size=(4, 5))
        out = wrapper.derivative(t)
        assert out.shape == t.shape
        assert out == approx(np.cos(t), rel=1e-8, abs=1e-9)


class TestFunctionWrapper:
    """ [x] - Exact derivatives are preferred over difference quotients
    [x] - Evaluations are counted
    [x] - Non-callables are rejected
    """
    def test_given_derivative(self):
        wrapper = FunctionWrapper(np.sin, deriv=lambda t: 42.0)
        assert wrapper.derivative(1.0) == 42.0

    def test_exact_derivative_of_exp_sum(self):
        f = ExpSum([1j, 3j], [1.0, 2.0])
        wrapper = FunctionWrapper(f)
        t = 0.7
        expected = 1j*np.exp(1j*t) + 6j*np.exp(3j*t)
        assert wrapper.derivative(t) == approx(expected, rel=1e-14)
        assert wrapper.nfev == 0  # no difference quotient was needed

    def test_counts(self):
        wrapper = FunctionWrapper(lambda t: t**2)
        for t in range(5):
            wrapper(t)
        assert wrapper.nfev == 5
        wrapper.derivative(1.0)
        assert wrapper.ndev == 1
        assert wrapper.nfev == 7  # central difference costs two evaluations

    def test_not_callable(self):
        with raises(TypeError):
            FunctionWrapper(3.0)
