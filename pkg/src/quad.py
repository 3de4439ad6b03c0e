""" Exponential moments, composite Gauss-Legendre quadrature and sup norms.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core import ExpSum, NormSpec, weighted
from src.errors import ArgumentError, DivergentIntegral, QuadratureFailure
from src.line_search import LineSearch
from src.result import QuadResult
from src.wrappers import FunctionWrapper

logger = logging.getLogger(__name__)

SERIES_THRESHOLD = 1e-4  # |mu| (b - a) below this uses the power series
REFINE_WIDTH = 1e-12


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    max_panels: int = 2**16
    gauss_order: int = 16
    sup_grid: int = 4096

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ArgumentError(
                f"rel_tol must be positive, got {self.rel_tol}"
            )
        if self.gauss_order < 2:
            raise ArgumentError(
                f"gauss_order must be at least 2, got {self.gauss_order}"
            )
        if self.max_panels < 1:
            raise ArgumentError(
                f"max_panels must be positive, got {self.max_panels}"
            )
        if self.sup_grid < 3:
            raise ArgumentError(
                f"sup_grid must be at least 3, got {self.sup_grid}"
            )


DEFAULT_CONFIG = QuadConfig()


def exp_moment(mu, a, b):
    """ Integral of exp(mu t) over [a, b], vectorised over mu.

    Args:
        mu: complex scalar or array
        a: left end
        b: right end, a <= b

    Returns:
        complex scalar or array shaped like mu
    """
    if a > b:
        raise ArgumentError(f"Need a <= b, got [{a}, {b}].")
    mu_arr = np.asarray(mu, dtype=complex)
    h = b - a
    z = mu_arr*h
    small = np.abs(z) < SERIES_THRESHOLD
    safe_mu = np.where(small, 1.0, mu_arr)
    with np.errstate(over="ignore", invalid="ignore"):
        direct = np.expm1(np.where(small, 0.0, z)) / safe_mu
        # truncation error of the series is below |z|^5/720 relative
        series = h*(1 + z/2*(1 + z/3*(1 + z/4*(1 + z/5))))
        out = np.exp(mu_arr*a)*np.where(small, series, direct)
    if mu_arr.ndim == 0:
        return complex(out)
    return out


def exp_moment_halfline(mu):
    """ Integral of exp(mu t) over [0, inf), requires Re mu < 0. """
    mu_arr = np.asarray(mu, dtype=complex)
    if np.any(mu_arr.real >= 0):
        raise DivergentIntegral(
            f"Integral of exp(mu t) over [0, inf) diverges for Re mu >= 0, "
            f"got mu = {mu}."
        )
    out = -1/mu_arr
    if mu_arr.ndim == 0:
        return complex(out)
    return out


def initial_panels(f, a, b):
    """ Enough panels to put about one oscillation or e-fold of an ExpSum on
    each panel.
    """
    if not isinstance(f, ExpSum) or math.isinf(b):
        return 4
    rate = np.max(np.abs(f.exps.exponents))
    return max(1, int(math.ceil(rate*(b - a)/math.pi)))


def integrate(func, a, b, cfg=DEFAULT_CONFIG, panels=1):
    """ Integral of func over the finite interval [a, b] by composite
    Gauss-Legendre quadrature. The panel count doubles until successive
    estimates agree to cfg.rel_tol.

    Args:
        func: vectorised function of real t
        a: left end
        b: right end
        cfg: QuadConfig
        panels: starting number of panels

    Returns:
        QuadResult
    """
    if not a < b or math.isinf(b) or math.isinf(a):
        raise ArgumentError(f"Need a finite interval, got [{a}, {b}].")
    objective = FunctionWrapper(func)
    nodes, weights = np.polynomial.legendre.leggauss(cfg.gauss_order)

    def _estimate(p):
        edges = np.linspace(a, b, p + 1)
        mid = (edges[1:] + edges[:-1]) / 2
        half = (edges[1:] - edges[:-1]) / 2
        t = mid[:, None] + half[:, None]*nodes[None, :]
        values = np.asarray(objective.f(t.ravel())).reshape(t.shape)
        # fixed reduction order: per panel, then ascending panel index
        return np.sum(half*(values @ weights))

    p = min(max(1, int(panels)), cfg.max_panels)
    previous = _estimate(p)
    while 2*p <= cfg.max_panels:
        p *= 2
        current = _estimate(p)
        error = abs(current - previous)
        logger.debug("quadrature panels=%d estimate=%r error=%.3e",
                     p, current, error)
        if error <= cfg.rel_tol*abs(current) or error == 0:
            return QuadResult(current, p, error, objective.nfev)
        previous = current
    raise QuadratureFailure(
        f"No convergence to relative tolerance {cfg.rel_tol} on [{a}, {b}] "
        f"with {cfg.max_panels} panels."
    )


def _halfline_norm(f, weight_rate):
    lam = f.exps.exponents
    mu = np.add.outer(lam.conj(), lam) - weight_rate
    gram = exp_moment_halfline(mu)
    return math.sqrt(max(0.0, np.real(f.coeffs.conj() @ gram @ f.coeffs)))


def lq_norm(f, spec, cfg=DEFAULT_CONFIG):
    """ || f(t) exp(-c t / 2) ||_{L_q[a, b]}.

    Args:
        f: ExpSum, or any vectorised function of real t
        spec: NormSpec
        cfg: QuadConfig

    Returns:
        the norm as a float
    """
    if spec.halfline:
        if not isinstance(f, ExpSum):
            raise ArgumentError("Half-line norms need an ExpSum.")
        return _halfline_norm(f, spec.weight_rate)

    c = spec.weight_rate
    if isinstance(f, ExpSum):
        g = weighted(f, c)
    elif c:
        def g(t):
            return f(t)*np.exp(-c*np.asarray(t)/2)
    else:
        g = f

    if math.isinf(spec.q):
        return sup_norm(g, spec.a, spec.b, cfg)[0]

    q = spec.q

    def _integrand(t):
        return np.abs(g(t))**q

    result = integrate(
        _integrand, spec.a, spec.b, cfg, panels=initial_panels(g, spec.a,
                                                               spec.b)
    )
    return float(np.real(result.value))**(1/q)


def sup_norm(f, a, b, cfg=DEFAULT_CONFIG):
    """ sup |f| on [a, b] by a uniform grid followed by golden-section
    refinement of |f|^2 around the best grid point. The returned value is
    attained by f, so it never exceeds the true sup.

    Args:
        f: vectorised function of real t
        a: left end
        b: right end
        cfg: QuadConfig

    Returns:
        (value, argmax)
    """
    if not a < b:
        raise ArgumentError(f"Need a < b, got [{a}, {b}].")
    objective = FunctionWrapper(lambda t: -abs(f(t))**2)
    grid = np.linspace(a, b, cfg.sup_grid)
    values = np.abs(f(grid))
    i = int(np.argmax(values))
    best_t, best = float(grid[i]), float(values[i])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    refined = LineSearch(objective).goldensection(
        lo, hi, precision=REFINE_WIDTH
    )
    value = math.sqrt(max(0.0, -refined.fx))
    if value > best:
        best_t, best = float(refined.x), value
    return best, best_t
