""" Extremal problems on finite dimensional spaces of exponential sums and
Muntz polynomials in weighted L_2 norms.

Point and derivative functionals are handled through reproducing kernels,
ratios of quadratic forms through the generalized eigenproblem. The
coefficient vector a of f represents f = sum_k a_k phi_k and the Gram matrix
is G_jk = <phi_j, phi_k> (conjugate linear in the first slot), so that
||f||^2 = a* G a.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.core import ExponentSet, ExpSum, NormSpec, classify
from src.errors import (
    ArgumentError, DivergentIntegral, OverflowGuard, WrongClass
)
from src.linalg import (
    CONDITION_LIMIT, HermitianMatrix, forward_substitution, gen_eigen_max,
    guard_condition, quad_form_inv
)
from src.quad import exp_moment, exp_moment_halfline
from src.result import ExtremalResult

logger = logging.getLogger(__name__)

LOG_OVERFLOW = 700.0


class MuntzPowers(ExponentSet):
    """ The Muntz system x^lambda_1, ..., x^lambda_n on [0, 1].

    Under x = exp(-t) it corresponds to the exponential system with
    exponents -lambda_j and the weight exp(-t) on [0, inf).
    """
    def __repr__(self):
        return f"MuntzPowers({list(self.exponents)})"

    def as_exponentials(self):
        return ExponentSet(-self.exponents)


def _powers_at(x, lam):
    """ x**lam for real x >= 0, rows indexed by x. """
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = np.exp(np.multiply.outer(np.log(flat), lam))
    at_zero = flat == 0
    if np.any(at_zero):
        zero_row = np.where(
            lam == 0, 1.0, np.where(lam.real > 0, 0.0, np.inf)
        )
        out[at_zero] = zero_row
    return out.reshape(x.shape + lam.shape)


class MuntzPolynomial:
    """ P(x) = sum_j a_j x^lambda_j for x >= 0. """
    def __init__(self, powers, coeffs):
        self.powers = np.array(powers, dtype=complex, ndmin=1).ravel()
        self.coeffs = np.array(coeffs, dtype=complex, ndmin=1).ravel()
        if self.powers.shape != self.coeffs.shape:
            raise ArgumentError(
                f"Got {self.powers.size} powers and {self.coeffs.size} "
                f"coefficients."
            )

    def __call__(self, x):
        if self.powers.size == 0:
            return np.zeros_like(np.asarray(x, dtype=complex))
        out = _powers_at(x, self.powers) @ self.coeffs
        if np.ndim(x) == 0:
            return complex(out)
        return out

    def deriv(self):
        keep = self.powers != 0
        return MuntzPolynomial(
            self.powers[keep] - 1, (self.powers*self.coeffs)[keep]
        )

    def __repr__(self):
        terms = " + ".join(
            f"({a:.6g})x^({lam:.6g})"
            for a, lam in zip(self.coeffs, self.powers)
        )
        return f"MuntzPolynomial({terms})"


POINT = "point"
DERIV = "deriv"


@dataclass(frozen=True)
class Functional:
    """ f -> f(y) (kind "point") or f -> f'(y) (kind "deriv"). """
    kind: str
    y: float

    def __post_init__(self):
        if self.kind not in (POINT, DERIV):
            raise ArgumentError(f"Unknown functional kind {self.kind!r}.")

    @classmethod
    def parse(cls, text):
        """ Functional from 'point:<y>' or 'deriv:<y>'. """
        try:
            kind, y = text.split(":")
            return cls(kind.strip(), float(y))
        except ValueError as err:
            raise ArgumentError(
                f"Functional must look like point:<y> or deriv:<y>, got "
                f"{text!r}."
            ) from err

    def apply(self, f):
        if self.kind == POINT:
            return f(self.y)
        return f.deriv()(self.y)

    def dual_vector(self, system):
        """ v with functional(sum a_j phi_j) = sum v_j a_j.

        Magnitudes are checked in log form before exponentiating.
        """
        lam = system.exponents
        if isinstance(system, MuntzPowers):
            return self._muntz_dual(lam)
        log_mag = (lam*self.y).real
        if self.kind == DERIV:
            with np.errstate(divide="ignore"):
                log_mag = log_mag + np.log(np.abs(lam))
        if np.max(log_mag) > LOG_OVERFLOW:
            raise OverflowGuard(
                f"Dual vector of {self} overflows (log magnitude "
                f"{np.max(log_mag):.1f})."
            )
        v = np.exp(lam*self.y)
        if self.kind == DERIV:
            v = lam*v
        return v

    def _muntz_dual(self, lam):
        y = self.y
        if y < 0:
            raise ArgumentError(f"Muntz systems live on x >= 0, got y = {y}.")
        if y == 0:
            if self.kind == POINT:
                bad = (lam != 0) & (lam.real <= 0)
                v = np.where(lam == 0, 1.0, 0.0).astype(complex)
            else:
                bad = (lam != 0) & (lam != 1) & (lam.real <= 1)
                v = np.where(lam == 1, 1.0, 0.0).astype(complex)
            if np.any(bad):
                raise OverflowGuard(
                    f"{self} is unbounded on powers {lam[bad]}."
                )
            return v
        shift = 0 if self.kind == POINT else 1
        log_mag = ((lam - shift)*math.log(y)).real
        if self.kind == DERIV:
            with np.errstate(divide="ignore"):
                log_mag = log_mag + np.log(np.abs(lam))
        if np.max(log_mag) > LOG_OVERFLOW:
            raise OverflowGuard(
                f"Dual vector of {self} overflows (log magnitude "
                f"{np.max(log_mag):.1f})."
            )
        v = np.exp((lam - shift)*math.log(y))
        if self.kind == DERIV:
            v = lam*v
        return v


def PointEval(y):
    return Functional(POINT, float(y))


def DerivEval(y):
    return Functional(DERIV, float(y))


def make_function(system, coeffs):
    """ The function with the given coefficients in `system`. """
    if isinstance(system, MuntzPowers):
        return MuntzPolynomial(system.exponents, coeffs)
    return ExpSum(system, coeffs, allow_zero=True)


def monomial_gram(powers):
    """ G_jk = 1 / (conj(lambda_j) + lambda_k + 1), the L_2[0, 1] inner
    products of x^lambda_j and x^lambda_k.
    """
    if not isinstance(powers, MuntzPowers):
        powers = MuntzPowers(powers)
    lam = powers.exponents
    s = np.add.outer(lam.conj(), lam) + 1
    if np.any(s.real <= 0):
        raise DivergentIntegral(
            f"L_2[0, 1] inner products diverge unless Re(lambda) > -1/2, got "
            f"{lam}."
        )
    return HermitianMatrix(1/s, meta={"system": powers, "spec": NormSpec()})


def gram(system, spec=NormSpec()):
    """ Gram matrix of the system under the weighted L_2 norm of spec.

    Args:
        system: ExponentSet (exp(lambda t) on spec's domain) or MuntzPowers
            (x^lambda on L_2[0, 1])
        spec: NormSpec with q = 2

    Returns:
        HermitianMatrix
    """
    if spec.q != 2:
        raise ArgumentError(f"Gram matrices need q = 2, got q = {spec.q}.")
    if isinstance(system, MuntzPowers):
        if (spec.a, spec.b, spec.weight_rate) != (0.0, 1.0, 0.0):
            raise ArgumentError("Muntz systems use the norm of L_2[0, 1].")
        return monomial_gram(system)
    lam = system.exponents
    mu = np.add.outer(lam.conj(), lam) - spec.weight_rate
    if spec.halfline:
        entries = exp_moment_halfline(mu)
    else:
        entries = exp_moment(mu, spec.a, spec.b)
    return HermitianMatrix(entries, meta={"system": system, "spec": spec})


def christoffel_sup(G, system, functional, limit=CONDITION_LIMIT):
    """ sup |functional(f)| / ||f|| over the span of system, the square root
    of the reproducing kernel value conj(v)* G^-1 conj(v).

    Args:
        G: Gram matrix of system
        system: ExponentSet or MuntzPowers
        functional: Functional
        limit: largest accepted Gram condition number

    Returns:
        ExtremalResult with the unit norm extremal function as witness
    """
    u = functional.dual_vector(system).conj()
    kappa, c = quad_form_inv(G, u, return_solution=True, limit=limit)
    cond = G.condition()
    value = math.sqrt(kappa)
    if value > 0:
        coeffs = c / value
    else:
        # functional vanishes on the span; any unit vector is extremal
        coeffs = np.zeros(G.dim, dtype=complex)
        coeffs[0] = 1 / math.sqrt(G.entries[0, 0].real)
    return ExtremalResult(
        value, coeffs, system, cond,
        witness=make_function(system, coeffs),
        info=f"{functional.kind} evaluation at y={functional.y}",
    )


def markov_sup(system, spec=NormSpec(), limit=CONDITION_LIMIT):
    """ sup ||D f|| / ||f|| over the span, where D multiplies the coefficient
    of phi_j by lambda_j: D = d/dt for exponential sums, D = x d/dx for Muntz
    polynomials.

    Returns:
        ExtremalResult
    """
    G = gram(system, spec)
    cond = guard_condition(G, limit)
    lam = system.exponents
    A = HermitianMatrix(G.entries*np.outer(lam.conj(), lam))
    top, v = gen_eigen_max(A, G)
    v = v / math.sqrt(np.real(v.conj() @ G.entries @ v))
    return ExtremalResult(
        math.sqrt(max(top, 0.0)), v, system, cond,
        witness=make_function(system, v), info="markov ratio",
    )


def truncation_sup(exps, T, limit=CONDITION_LIMIT):
    """ Worst ratio of int_0^inf |f|^2 exp(-t) dt to int_0^T |f|^2 exp(-t) dt
    over the span of exps.
    """
    if not classify(exps).e_minus:
        raise WrongClass(
            f"Truncation ratios need Re(lambda) <= 0, got {exps.exponents}."
        )
    if not T > 0:
        raise ArgumentError(f"Need T > 0, got {T}.")
    full = gram(exps, NormSpec.laguerre(1.0))
    if math.isinf(T):
        part = full
    else:
        part = gram(exps, NormSpec(0.0, float(T), 1.0))
    guard_condition(part, limit)
    return gen_eigen_max(full, part)[0]


def orthonormal_basis(G, limit=CONDITION_LIMIT):
    """ Rows are coefficient vectors of the Gram-Schmidt orthonormalisation of
    the system in its canonical order: C is lower triangular with positive
    diagonal and conj(C) G C^T = I. For Muntz systems the rows are the
    orthonormal Muntz-Legendre polynomials.
    """
    if not isinstance(G, HermitianMatrix):
        G = HermitianMatrix(G)
    L = G.factor()
    guard_condition(G, limit)
    L_inv = forward_substitution(L, np.eye(G.dim, dtype=complex))
    return L_inv.conj()


def _closed_form_powers(system):
    """ Muntz powers equivalent to system under x = exp(-t). """
    if isinstance(system, MuntzPowers):
        return system.exponents
    if isinstance(system, ExponentSet):
        return -system.exponents
    raise ArgumentError(
        f"Expected MuntzPowers or ExponentSet, got {system!r}."
    )


def _check_powers(mu):
    if np.any(mu.real <= -0.5):
        raise ArgumentError(
            f"Closed forms need Re(lambda) > -1/2 for powers "
            f"(Re(lambda) < 1/2 for exponents), got powers {mu}."
        )


def point_bound_closed(system):
    """ sqrt(sum (1 + 2 Re lambda_j)) for Muntz powers, and
    sqrt(sum (1 - 2 Re lambda_j)) for exponents. This is the kernel value at
    x = 1 in L_2[0, 1], respectively at t = 0 in L_2[0, inf) with weight
    exp(-t).
    """
    mu = _closed_form_powers(system)
    _check_powers(mu)
    return math.sqrt(np.sum(1 + 2*mu.real))


def deriv_bound_closed(system):
    """ sqrt(sum_k (1 + 2 Re mu_k) |mu_k + sum_{j<k} (1 + 2 Re mu_j)|^2) with
    mu the Muntz powers (mu = -lambda for exponents). The value does not
    depend on the order of the powers.
    """
    mu = _closed_form_powers(system)
    _check_powers(mu)
    w = 1 + 2*mu.real
    before = np.concatenate(([0.0], np.cumsum(w)[:-1]))
    return math.sqrt(np.sum(w*np.abs(mu + before)**2))


class MarkovVariant(Enum):
    THM10_1 = "THM10_1"
    THM10_2 = "THM10_2"
    THM11_1 = "THM11_1"
    LEMMA12_11 = "LEMMA12_11"
    LEMMA12_12 = "LEMMA12_12"


def markov_norm(variant):
    """ System type and norm under which variant bounds the Markov ratio. """
    if variant in (MarkovVariant.THM10_1, MarkovVariant.THM10_2):
        return ExponentSet, NormSpec.laguerre(1.0)
    if variant is MarkovVariant.THM11_1:
        return ExponentSet, NormSpec.laguerre(0.0)
    return MuntzPowers, NormSpec()


def _pair_sum(w):
    """ sum_j w_j sum_{k>j} w_k """
    after = np.sum(w) - np.cumsum(w)
    return float(np.sum(w*after))


def markov_bound_closed(variant, system):
    """ Closed form upper bound of markov_sup for the given variant.

    Args:
        variant: MarkovVariant
        system: ExponentSet (THM10_x, THM11_1) or MuntzPowers (LEMMA12_x)

    Returns:
        the bound as a float
    """
    variant = MarkovVariant(variant)
    lam = system.exponents
    lam_max = float(np.max(np.abs(lam)))
    if variant is MarkovVariant.THM10_1:
        if np.any(lam.real >= 0.5):
            raise ArgumentError(f"Need Re(lambda) < 1/2, got {lam}.")
        return lam_max + math.sqrt(max(_pair_sum(1 - 2*lam.real), 0.0))
    if variant is MarkovVariant.THM10_2:
        if not classify(system).t_n:
            raise WrongClass(f"Need purely imaginary exponents, got {lam}.")
        n = lam.size
        return lam_max + math.sqrt(n*(n - 1)/2)
    if variant is MarkovVariant.THM11_1:
        if np.any(lam.real >= 0):
            raise ArgumentError(f"Need Re(lambda) < 0, got {lam}.")
        return (
            0.5 + float(np.max(np.abs(lam + 0.5)))
            + 2*math.sqrt(max(_pair_sum(lam.real), 0.0))
        )
    if np.any(lam.real <= -0.5):
        raise ArgumentError(f"Need Re(lambda) > -1/2, got {lam}.")
    pairs = max(_pair_sum(1 + 2*lam.real), 0.0)
    if variant is MarkovVariant.LEMMA12_11:
        return math.sqrt(float(np.sum(np.abs(lam)**2)) + pairs)
    return lam_max + math.sqrt(pairs)
