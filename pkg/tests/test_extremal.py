import math

import numpy as np
from pytest import approx, fixture, mark, raises

import context  # noqa
from src.core import ExponentSet, ExpSum, NormSpec
from src.errors import (
    ArgumentError, DivergentIntegral, OverflowGuard, WrongClass
)
from src.extremal import (
    DerivEval, Functional, MarkovVariant, MuntzPolynomial, MuntzPowers,
    PointEval, christoffel_sup, deriv_bound_closed, gram, make_function,
    markov_bound_closed, markov_norm, markov_sup, monomial_gram,
    orthonormal_basis, point_bound_closed, truncation_sup
)
from src.quad import lq_norm
from src.suite import comparison_holds, comparison_pair
from src.theorems import derivative_sum


@fixture()
def rng():
    rng = np.random.default_rng(2718)
    return rng


def polynomial_powers(n):
    return MuntzPowers(np.arange(n))


class TestMuntz:
    """ [x] - Muntz polynomials and their derivatives
    [x] - The exponential system under x = exp(-t)
    """
    def test_evaluate(self):
        P = MuntzPolynomial([0, 2], [1, 3])
        assert P(0.5) == approx(1.75)
        assert P(0.0) == approx(1)
        assert P(np.array([0.0, 1.0])) == approx([1, 4])

    def test_deriv(self):
        dP = MuntzPolynomial([0, 2], [1, 3]).deriv()
        assert list(dP.powers) == [1]
        assert dP(0.5) == approx(3)

    def test_mismatch(self):
        with raises(ArgumentError):
            MuntzPolynomial([0, 1], [1])

    def test_as_exponentials(self):
        powers = MuntzPowers([0.5, 2])
        assert powers.as_exponentials() == ExponentSet([-0.5, -2])

    def test_json(self, tmp_path):
        powers = MuntzPowers([0, 1, 2])
        path = tmp_path / "powers.json"
        powers.dump(path)
        loaded = MuntzPowers.load(path)
        assert isinstance(loaded, MuntzPowers)
        assert loaded == powers

    def test_make_function(self):
        assert isinstance(make_function(MuntzPowers([1]), [1]),
                          MuntzPolynomial)
        assert isinstance(make_function(ExponentSet([1j]), [1]), ExpSum)


class TestFunctional:
    def test_parse(self):
        assert Functional.parse("point:0.5") == PointEval(0.5)
        assert Functional.parse("deriv: 2") == DerivEval(2)

    @mark.parametrize("text", ["point", "point:x", "integral:0"])
    def test_parse_bad(self, text):
        with raises(ArgumentError):
            Functional.parse(text)

    def test_apply(self):
        f = ExpSum([2j], [1])
        assert PointEval(0.3).apply(f) == approx(np.exp(0.6j))
        assert DerivEval(0.3).apply(f) == approx(2j*np.exp(0.6j))

    def test_dual_vector(self, rng):
        exps = ExponentSet([-1 + 2j, 0.5, 3j])
        coeffs = rng.standard_normal(3) + 1j*rng.standard_normal(3)
        f = ExpSum(exps, coeffs)
        for functional in (PointEval(0.7), DerivEval(-0.2)):
            v = functional.dual_vector(exps)
            assert v @ coeffs == approx(functional.apply(f))

    def test_overflow(self):
        with raises(OverflowGuard):
            PointEval(1.0).dual_vector(ExponentSet([800.0]))
        with raises(OverflowGuard):
            DerivEval(1.0).dual_vector(ExponentSet([699.0, 1.0]))

    def test_muntz_at_zero(self):
        powers = MuntzPowers([0, 1, 2])
        assert PointEval(0).dual_vector(powers) == approx([1, 0, 0])
        assert DerivEval(0).dual_vector(powers) == approx([0, 1, 0])

    def test_muntz_unbounded_at_zero(self):
        with raises(OverflowGuard):
            PointEval(0).dual_vector(MuntzPowers([-0.25, 1]))
        with raises(OverflowGuard):
            DerivEval(0).dual_vector(MuntzPowers([0, 0.5]))

    def test_muntz_negative_point(self):
        with raises(ArgumentError):
            PointEval(-1).dual_vector(MuntzPowers([0, 1]))

    def test_muntz_interior(self):
        powers = MuntzPowers([0, 0.5, 3])
        P = MuntzPolynomial(powers.exponents, [1, -2, 0.5])
        v = DerivEval(0.25).dual_vector(powers)
        assert v @ P.coeffs == approx(P.deriv()(0.25))


class TestGram:
    """ [x] - Closed form entries on [a, b], the half line and [0, 1] for
    Muntz systems
    [x] - Unsupported norms are rejected
    """
    def test_single(self):
        G = gram(ExponentSet([0]), NormSpec())
        assert G.entries == approx(np.ones((1, 1)))

    def test_real_exponents(self):
        G = gram(ExponentSet([0, 1, 2]), NormSpec()).entries
        for j in range(3):
            for k in range(3):
                s = j + k
                expected = 1 if s == 0 else (math.exp(s) - 1)/s
                assert G[j, k] == approx(expected, rel=1e-13)

    def test_halfline(self):
        w = np.array([-2.0, 0.5, 3.0])
        G = gram(ExponentSet.imaginary(w), NormSpec.laguerre(1.0)).entries
        expected = 1/(1 - 1j*(w[None, :] - w[:, None]))
        assert G == approx(expected, rel=1e-14)

    def test_norm_identity(self, rng):
        """ a* G a is the squared norm of the function with coefficients a. """
        exps = ExponentSet([-1 + 2j, 0.5, 3j, -0.3 - 4j])
        spec = NormSpec(0.0, 1.5, 0.7)
        coeffs = rng.standard_normal(4) + 1j*rng.standard_normal(4)
        G = gram(exps, spec).entries
        assert np.real(coeffs.conj() @ G @ coeffs) == approx(
            lq_norm(ExpSum(exps, coeffs), spec)**2, rel=1e-9
        )

    def test_monomial(self):
        G = monomial_gram(MuntzPowers([0, 2j])).entries
        assert G[0, 1] == approx(1/(1 + 2j))
        assert gram(MuntzPowers([0, 1])).entries == approx(
            np.array([[1, 1/2], [1/2, 1/3]])
        )

    def test_monomial_divergent(self):
        with raises(DivergentIntegral):
            monomial_gram([-0.5, 1])

    def test_halfline_divergent(self):
        with raises(DivergentIntegral):
            gram(ExponentSet([1j, 0.6]), NormSpec.laguerre(1.0))

    def test_bad_norms(self):
        with raises(ArgumentError):
            gram(ExponentSet([1j]), NormSpec(q=1.0))
        with raises(ArgumentError):
            gram(MuntzPowers([0, 1]), NormSpec(0.0, 2.0))


class TestChristoffel:
    """ [x] - Kernel values of polynomial spaces
    [x] - The witness attains the sup with unit norm
    [x] - No function beats the sup
    [x] - Closed forms on the half line and for Muntz systems
    """
    @mark.parametrize("n", range(1, 8))
    def test_kernel_at_one(self, n):
        powers = polynomial_powers(n)
        res = christoffel_sup(monomial_gram(powers), powers, PointEval(1))
        assert res.value == approx(n, rel=1e-7)

    @mark.parametrize("n", range(1, 8))
    def test_kernel_at_zero(self, n):
        powers = polynomial_powers(n)
        res = christoffel_sup(monomial_gram(powers), powers, PointEval(0))
        assert res.value == approx(n, rel=1e-7)

    def test_derivative_at_zero(self):
        powers = polynomial_powers(3)
        res = christoffel_sup(monomial_gram(powers), powers, DerivEval(0))
        assert res.value == approx(math.sqrt(192), rel=1e-9)
        assert res.value == approx(derivative_sum(3), rel=1e-9)

    @mark.parametrize("functional", [PointEval(0.3), DerivEval(0.3),
                                     PointEval(1.0)])
    def test_witness(self, functional):
        exps = ExponentSet.imaginary([0.0, 3.0, 7.0, -5.0])
        spec = NormSpec()
        res = christoffel_sup(gram(exps, spec), exps, functional)
        assert lq_norm(res.witness, spec) == approx(1, rel=1e-8)
        assert abs(functional.apply(res.witness)) == approx(res.value,
                                                           rel=1e-9)
        assert res.gram_condition > 1

    def test_muntz_witness(self):
        powers = polynomial_powers(4)
        res = christoffel_sup(monomial_gram(powers), powers, DerivEval(0))
        P = res.witness
        assert lq_norm(P, NormSpec()) == approx(1, rel=1e-7)
        assert abs(P.deriv()(0.0)) == approx(res.value, rel=1e-7)

    def test_dominates_random(self, rng):
        exps = ExponentSet([-1 + 2j, 0.5, 3j])
        spec = NormSpec(0.0, 2.0)
        value = christoffel_sup(gram(exps, spec), exps, PointEval(1.2)).value
        for _ in range(50):
            coeffs = rng.standard_normal(3) + 1j*rng.standard_normal(3)
            f = ExpSum(exps, coeffs)
            assert abs(f(1.2))/lq_norm(f, spec) <= value*(1 + 1e-9)

    def test_vanishing_functional(self):
        powers = MuntzPowers([1, 2])
        res = christoffel_sup(monomial_gram(powers), powers, PointEval(0))
        assert res.value == 0
        assert res.coeffs[0] == approx(math.sqrt(3))

    @mark.parametrize("n", range(1, 8))
    def test_point_closed_form_polynomials(self, n):
        assert point_bound_closed(polynomial_powers(n)) == approx(n)

    def test_point_closed_form_halfline(self):
        exps = ExponentSet([-0.2 + 1j, 0.1 - 2j, -1.5, 0.3])
        res = christoffel_sup(gram(exps, NormSpec.laguerre(1.0)), exps,
                              PointEval(0))
        assert point_bound_closed(exps) == approx(res.value, rel=1e-9)

    def test_point_closed_form_muntz(self):
        powers = MuntzPowers([0.3, 1.7, 2.9])
        res = christoffel_sup(monomial_gram(powers), powers, PointEval(1))
        assert point_bound_closed(powers) == approx(res.value, rel=1e-9)

    @mark.parametrize("n", range(1, 7))
    def test_deriv_closed_form_polynomials(self, n):
        assert deriv_bound_closed(polynomial_powers(n)) == approx(
            derivative_sum(n), rel=1e-12
        )

    def test_deriv_closed_form_halfline(self):
        exps = ExponentSet([-0.25, -1.3, -2.8, 0.2])
        res = christoffel_sup(gram(exps, NormSpec.laguerre(1.0)), exps,
                              DerivEval(0))
        assert deriv_bound_closed(exps) == approx(res.value, rel=1e-8)

    def test_deriv_closed_form_order(self):
        assert deriv_bound_closed(MuntzPowers([2.5, 0.2, 1.1])) == approx(
            deriv_bound_closed(ExponentSet([-0.2, -1.1, -2.5]))
        )

    def test_closed_form_domain(self):
        with raises(ArgumentError):
            point_bound_closed(MuntzPowers([-0.5, 1]))
        with raises(ArgumentError):
            deriv_bound_closed(ExponentSet([0.5]))


class TestOrthonormalBasis:
    def test_legendre(self):
        C = orthonormal_basis(monomial_gram(polynomial_powers(2)))
        assert C[0] == approx([1, 0])
        assert C[1] == approx([-math.sqrt(3), 2*math.sqrt(3)])

    def test_orthonormal(self):
        exps = ExponentSet([-1 + 2j, 0.5, 3j, -0.3 - 4j])
        G = gram(exps, NormSpec(0.0, 1.0, 0.5))
        C = orthonormal_basis(G)
        assert C.conj() @ G.entries @ C.T == approx(np.eye(4), abs=1e-10)
        assert np.allclose(np.triu(C, 1), 0)
        assert np.all(C.diagonal().real > 0)


class TestMarkov:
    """ [x] - Norm and system of each variant
    [x] - The exact sup never exceeds the closed form bounds
    [x] - Equality for a single exponent
    """
    def test_norms(self):
        assert markov_norm(MarkovVariant.THM10_1) == (
            ExponentSet, NormSpec.laguerre(1.0)
        )
        assert markov_norm(MarkovVariant.THM11_1) == (
            ExponentSet, NormSpec.laguerre(0.0)
        )
        assert markov_norm(MarkovVariant.LEMMA12_12) == (MuntzPowers,
                                                         NormSpec())

    @mark.parametrize("variant,system", [
        (MarkovVariant.THM10_1, ExponentSet([-0.5])),
        (MarkovVariant.THM10_2, ExponentSet([7j])),
        (MarkovVariant.THM11_1, ExponentSet([-2 + 1j])),
        (MarkovVariant.LEMMA12_11, MuntzPowers([2])),
        (MarkovVariant.LEMMA12_12, MuntzPowers([2])),
    ])
    def test_single_exponent(self, variant, system):
        _, spec = markov_norm(variant)
        value = markov_sup(system, spec).value
        assert value == approx(abs(system[0]), rel=1e-12)
        if variant is not MarkovVariant.THM11_1:
            assert markov_bound_closed(variant, system) == approx(value)

    @mark.parametrize("variant,system", [
        (MarkovVariant.THM10_1, ExponentSet([-1 + 2j, 0.3 - 1j, -0.5, 4j])),
        (MarkovVariant.THM10_2, ExponentSet.imaginary([-3, 0, 1, 2.5, 6])),
        (MarkovVariant.THM11_1, ExponentSet([-0.5 + 1j, -2, -1 - 3j])),
        (MarkovVariant.LEMMA12_11, MuntzPowers([0, 0.7, 2, 3.5])),
        (MarkovVariant.LEMMA12_12, MuntzPowers([0, 0.7, 2, 3.5])),
    ])
    def test_bounded(self, variant, system):
        _, spec = markov_norm(variant)
        value = markov_sup(system, spec).value
        assert value <= markov_bound_closed(variant, system)*(1 + 1e-9)

    def test_witness_attains(self):
        exps = ExponentSet.imaginary([-3, 0, 1, 2.5])
        spec = NormSpec.laguerre(1.0)
        res = markov_sup(exps, spec)
        f = res.witness
        assert lq_norm(f, spec) == approx(1, rel=1e-10)
        assert lq_norm(f.deriv(), spec) == approx(res.value, rel=1e-9)

    def test_imaginary_example(self):
        exps = ExponentSet.imaginary([-2, 0, 2])
        bound = markov_bound_closed(MarkovVariant.THM10_2, exps)
        assert bound == approx(2 + math.sqrt(3))

    def test_wrong_class(self):
        with raises(WrongClass):
            markov_bound_closed(MarkovVariant.THM10_2, ExponentSet([-1, 2j]))
        with raises(ArgumentError):
            markov_bound_closed(MarkovVariant.THM11_1, ExponentSet([0, -1]))


class TestTruncation:
    def test_scalar(self):
        value = truncation_sup(ExponentSet([0.0]), 9.0)
        assert value == approx(1/(1 - math.exp(-9)), rel=1e-12)

    def test_infinite_range(self):
        exps = ExponentSet([0, -1 + 1j, -2])
        assert truncation_sup(exps, math.inf) == approx(1, rel=1e-10)

    def test_decreasing_in_range(self):
        exps = ExponentSet([0, -0.5 + 3j, -1 - 2j])
        values = [truncation_sup(exps, T) for T in (2.0, 5.0, 10.0)]
        assert values[0] >= values[1] >= values[2] >= 1

    def test_wrong_class(self):
        with raises(WrongClass):
            truncation_sup(ExponentSet([1.0]), 9.0)
        with raises(ArgumentError):
            truncation_sup(ExponentSet([-1.0]), 0.0)


class TestComparison:
    """ Sups at exterior points are monotone in the exponents. """
    @mark.parametrize("n", range(1, 5))
    def test_pairs(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(5):
            delta, gamma, _ = comparison_pair(rng, n)
            assert np.all(delta.exponents.real <= gamma.exponents.real)
            assert comparison_holds(delta, gamma) == []


class TestScaling:
    """ [x] - Sups on [0, L] follow from [0, 1] with exponents times L
    [x] - Real and imaginary exponent sets
    """
    @mark.parametrize("L", [0.5, 2.0, 3.0])
    @mark.parametrize("exps", [
        ExponentSet([0, 1, -2]),
        ExponentSet([0.5j, -0.5j, 1]),
    ])
    def test_point(self, exps, L):
        # f(t) on [0, L] is g(t / L) with g in E(L lambda) on [0, 1], and
        # ||f||_L2[0, L] = L^(1/2) ||g||_L2[0, 1]
        wide = christoffel_sup(gram(exps, NormSpec(0, L)), exps, PointEval(0))
        unit = exps.scaled(L)
        narrow = christoffel_sup(gram(unit, NormSpec()), unit, PointEval(0))
        assert wide.value == approx(L**-0.5*narrow.value, rel=1e-8)

    @mark.parametrize("L", [0.5, 2.0, 3.0])
    def test_derivative(self, L):
        exps = ExponentSet([0, 1, -2])
        wide = christoffel_sup(gram(exps, NormSpec(0, L)), exps, DerivEval(0))
        unit = exps.scaled(L)
        narrow = christoffel_sup(gram(unit, NormSpec()), unit, DerivEval(0))
        # one more factor 1 / L from the chain rule
        assert wide.value == approx(L**-1.5*narrow.value, rel=1e-8)
