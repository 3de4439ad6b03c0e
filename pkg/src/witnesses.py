""" Explicit functions realising the lower bounds and sharpness claims.

Polynomial limits of exponential sums (exponents i*eps*k with eps -> 0) are
represented by the Muntz system of integer powers, on which the extremal
ratios are computed exactly through the reproducing kernel.
"""
import logging
import math

import numpy as np

from src.core import ExponentSet, ExpSum, NormSpec, substitute_linear
from src.errors import ArgumentError
from src.extremal import (
    DerivEval, MuntzPowers, PointEval, christoffel_sup, monomial_gram
)
from src.quad import lq_norm, sup_norm
from src.result import WitnessResult
from src.theorems import TheoremId, derivative_sum, rhs_bound

logger = logging.getLogger(__name__)

KERNEL_TOL = 1e-6  # Hilbert-type Gram matrices lose about 10 digits at n = 8
CHEBYSHEV_EPS = 1e-3
CANCELLATION = 1e8  # largest accepted eps^-m in the Chebyshev composition


def witness(theorem, n, **extras):
    """ The extremal construction for a lower bound or sharpness claim.

    Args:
        theorem: one of T2_6, T5_3, T6_1, T7_1, T8_1, T9_2
        n: number of terms (polynomial degree for T9_2)

    Kwargs:
        lam: frequency bound (T8_1)
        y, a, b: point and interval (T7_1), default 0.5, 0, 1

    Returns:
        WitnessResult
    """
    theorem = TheoremId(theorem)
    if n < 1:
        raise ArgumentError(f"Need n >= 1, got n = {n}.")
    try:
        build = _BUILDERS[theorem]
    except KeyError:
        raise ArgumentError(f"No witness construction for {theorem.value}.") \
            from None
    result = build(n, **extras)
    logger.debug("witness %r", result)
    return result


def _polynomial_point(n, **extras):
    powers = MuntzPowers(np.arange(n))
    res = christoffel_sup(monomial_gram(powers), powers, PointEval(0))
    return WitnessResult(
        TheoremId.T2_6, n, res.witness, res.value, float(n),
        exps=powers, tol=KERNEL_TOL,
        info="polynomial limit, |P(0)| / ||P||_L2[0,1]",
    )


def _polynomial_derivative(theorem):
    def _build(n, **extras):
        powers = MuntzPowers(np.arange(n))
        res = christoffel_sup(monomial_gram(powers), powers, DerivEval(0))
        return WitnessResult(
            theorem, n, res.witness, res.value, derivative_sum(n),
            exps=powers, tol=KERNEL_TOL,
            info="polynomial limit, |P'(0)| / ||P||_L2[0,1]",
        )
    return _build


def _chebyshev_markov(n, **extras):
    Q = np.polynomial.Chebyshev.basis(n, domain=[0, 1])
    top, _ = sup_norm(Q, 0.0, 1.0)
    achieved = abs(float(Q.deriv()(0.0)))/top
    return WitnessResult(
        TheoremId.T9_2, n, Q, achieved, rhs_bound(TheoremId.T9_2, n),
        info="T_n(2x - 1)",
    )


def _legendre_kernel(n, y=0.5, a=0.0, b=1.0, **extras):
    if not a < y < b:
        raise ArgumentError(f"Need a < y < b, got a={a}, y={y}, b={b}.")
    # Q(x) = sum_{k<n} p_k(0) p_k(x) with p_k orthonormal on [-1, 1]
    k = np.arange(n)
    values = np.polynomial.legendre.legval(0.0, np.eye(n))
    kernel = np.polynomial.Legendre((2*k + 1)/2*values, domain=[0, 1])
    # x = 2u - 1 with u = exp(-t), so Q(x) exp(-t/2) lies in E_n
    # identity domain and window, so the coefficients are those of powers of u;
    # trailing zeros are trimmed by numpy and restored here
    coef = kernel.convert(domain=[-1, 1], kind=np.polynomial.Polynomial).coef
    p = np.zeros(n)
    p[:coef.size] = coef
    f = ExpSum(-(k + 0.5), p, allow_zero=True)

    mirrored = b - y < y - a
    m = b - y if mirrored else y - a
    scale = m/math.log(2)
    if mirrored:
        g = substitute_linear(f, -1/scale, b/scale)
    else:
        g = substitute_linear(f, 1/scale, -a/scale)

    def _stable(s):
        s = np.asarray(s)
        t = (b - s)/scale if mirrored else (s - a)/scale
        return kernel(np.exp(-t))*np.exp(-t/2)

    # the monomial form cancels badly; value and norm use the Legendre form
    value = abs(float(kernel(0.5)))/math.sqrt(2)
    achieved = value/lq_norm(_stable, NormSpec(a, b))
    bound = rhs_bound(TheoremId.T7_1, n, y=y, a=a, b=b, side="lower")
    return WitnessResult(
        TheoremId.T7_1, n, g, achieved, bound, exps=g.exps,
        info=f"Legendre kernel at y={y} on [{a}, {b}]",
    )


def _sine(lam):
    exps = ExponentSet.imaginary([-lam, lam])
    return ExpSum(exps, [-1/2j, 1/2j])


def _chebyshev_sine(n, lam):
    """ T_m(sin(eps t) / eps) as an exponential sum with frequencies k*eps,
    k odd, |k| <= m, padded with the frequency lam. m is the largest odd
    integer with m + 2 <= n.

    eps starts at CHEBYSHEV_EPS. The coefficients grow like eps^-m and
    cancel in the sum, so eps is raised to CANCELLATION^(-1/m) whenever
    eps^-m would exceed CANCELLATION; for m >= 3 this is the value used.
    """
    m = n - 2 if n % 2 else n - 3
    if m < 1:
        return None
    eps = max(CHEBYSHEV_EPS, CANCELLATION**(-1/m))
    size = 2*m + 2
    theta = 2*np.pi*np.arange(size)/size
    samples = np.polynomial.Chebyshev.basis(m)(np.sin(theta)/eps)
    spectrum = np.fft.fft(samples)/size
    harmonics = np.arange(-m, m + 1, 2)
    freqs = list(eps*harmonics)
    coeffs = list(spectrum[harmonics % size])
    if np.min(np.abs(np.asarray(freqs) - lam)) > 1e-9:
        freqs.append(lam)
        coeffs.append(0.0)
    return ExpSum(1j*np.asarray(freqs), coeffs)


def _bernstein(n, lam=None, **extras):
    if lam is None:
        raise ArgumentError("T8_1 needs the extra parameter 'lam'.")
    if not lam > 0:
        raise ArgumentError(f"Need lam > 0, got lam = {lam}.")
    candidates = []
    if n >= 2:
        candidates.append(("sin(lam t)", _sine(lam)))
    composed = _chebyshev_sine(n, lam)
    if composed is not None:
        candidates.append(("T_m(sin(eps t) / eps)", composed))
    if not candidates:
        # a single exponential has f' = lam f
        candidates.append(("exp(i lam t)", ExpSum([1j*lam], [1.0])))

    best = None
    for name, f in candidates:
        achieved = abs(f.deriv()(0.0))/sup_norm(f, -1.0, 1.0)[0]
        logger.debug("T8_1 candidate %s: ratio %.10g", name, achieved)
        if best is None or achieved > best[2]:
            best = (name, f, achieved)
    name, f, achieved = best
    bound = rhs_bound(TheoremId.T8_1, n, lam=lam, side="lower")
    return WitnessResult(
        TheoremId.T8_1, n, f, achieved, bound, exps=f.exps, tol=1e-6,
        info=name,
    )


_BUILDERS = {
    TheoremId.T2_6: _polynomial_point,
    TheoremId.T5_3: _polynomial_derivative(TheoremId.T5_3),
    TheoremId.T6_1: _polynomial_derivative(TheoremId.T6_1),
    TheoremId.T7_1: _legendre_kernel,
    TheoremId.T8_1: _bernstein,
    TheoremId.T9_2: _chebyshev_markov,
}
