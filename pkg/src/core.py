import json
import math
from dataclasses import dataclass

import numpy as np

from src.errors import ArgumentError, DegenerateExponents

DEGENERACY_TOL = 1e-9  # minimum pairwise distance between exponents
IMAG_TOL = 1e-12  # |Re| below this counts as purely imaginary
_EVAL_CHUNK = 1 << 16  # evaluation points per block


def canonical_order(values):
    """ Permutation sorting complex numbers ascending by real part, ties by
    imaginary part. Real parts within IMAG_TOL of zero are compared as zero.

    Args:
        values: 1-d array of complex numbers

    Returns:
        list of indices
    """
    keys = [
        (0.0 if abs(z.real) <= IMAG_TOL else z.real, z.imag) for z in values
    ]
    return sorted(range(len(keys)), key=keys.__getitem__)


class ExponentSet:
    """ Distinct complex exponents stored in canonical order.

    >>> exps = ExponentSet([3j, 1j, 2j])
    >>> exps.exponents
    array([0.+1.j, 0.+2.j, 0.+3.j])
    """
    def __init__(self, exponents):
        values = np.array(exponents, dtype=complex, ndmin=1).ravel()
        if values.size == 0:
            raise ArgumentError("An exponent set needs at least one exponent.")
        if not np.all(np.isfinite(values)):
            raise ArgumentError(f"Exponents must be finite, got {values}.")
        values = values[canonical_order(values)]
        if values.size > 1:
            distance = np.abs(values[:, None] - values[None, :])
            np.fill_diagonal(distance, np.inf)
            j, k = np.unravel_index(np.argmin(distance), distance.shape)
            if distance[j, k] <= DEGENERACY_TOL:
                raise DegenerateExponents(
                    f"Exponents {values[j]} and {values[k]} are closer than "
                    f"{DEGENERACY_TOL}."
                )
        values.flags.writeable = False
        self._values = values

    @classmethod
    def imaginary(cls, frequencies):
        """ The set {i*w : w in frequencies}. """
        return cls(1j*np.asarray(frequencies, dtype=float))

    @property
    def exponents(self):
        return self._values

    @property
    def n(self):
        return self._values.size

    @property
    def lam_max(self):
        """ max |lambda_j| """
        return float(np.max(np.abs(self._values)))

    def scaled(self, alpha):
        return ExponentSet(alpha*self._values)

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self._values)

    def __getitem__(self, idx):
        return self._values[idx]

    def __eq__(self, other):
        if not isinstance(other, ExponentSet):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        return f"ExponentSet({list(self._values)})"

    def to_json(self):
        return [{"re": float(z.real), "im": float(z.imag)} for z in self]

    @classmethod
    def from_json(cls, items):
        try:
            return cls([complex(item["re"], item["im"]) for item in items])
        except (KeyError, TypeError) as err:
            raise ArgumentError(
                f"Exponent list must be objects with 're' and 'im', got "
                f"{items!r}."
            ) from err

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class ExpClass:
    """ Class memberships of an exponent set. E_n always holds. """
    e_plus: bool
    e_minus: bool
    t_n: bool
    e_n: bool = True


def classify(exps):
    re = np.real(exps.exponents)
    e_plus = bool(np.all(re >= -IMAG_TOL))
    e_minus = bool(np.all(re <= IMAG_TOL))
    imaginary = bool(np.all(np.abs(re) <= IMAG_TOL))
    # canonical order sorts purely imaginary sets by imaginary part and the
    # set is distinct, so the increasing condition holds automatically
    return ExpClass(e_plus=e_plus, e_minus=e_minus, t_n=imaginary)


@dataclass(frozen=True)
class NormSpec:
    """ Norm of f on [a, b] (b may be inf) with weight exp(-c t) on |f|^2.
    For general q the weighted norm is || f(t) exp(-c t / 2) ||_{L_q}.
    """
    a: float = 0.0
    b: float = 1.0
    weight_rate: float = 0.0
    q: float = 2.0

    def __post_init__(self):
        if not self.a < self.b:
            raise ArgumentError(f"Need a < b, got [{self.a}, {self.b}].")
        if math.isinf(self.a):
            raise ArgumentError("The left endpoint must be finite.")
        if self.weight_rate < 0:
            raise ArgumentError(
                f"Weight rate must be >= 0, got {self.weight_rate}."
            )
        if not self.q > 0:
            raise ArgumentError(f"Need q in (0, inf], got {self.q}.")
        if self.halfline and (self.a != 0 or self.q != 2):
            raise ArgumentError(
                "Half-line norms are supported on [0, inf) with q = 2 only."
            )

    @property
    def halfline(self):
        return math.isinf(self.b)

    @classmethod
    def laguerre(cls, weight_rate=1.0):
        """ L_2[0, inf) with weight exp(-c t). """
        return cls(0.0, math.inf, weight_rate, 2.0)


class ExpSum:
    """ f(t) = sum_j a_j exp(lambda_j t).

    Exponents passed as an ExponentSet are taken to be aligned with coeffs.
    Any other iterable is sorted canonically and coeffs are permuted with it.
    """
    def __init__(self, exps, coeffs, allow_zero=False):
        coeffs = np.array(coeffs, dtype=complex, ndmin=1).ravel()
        if not isinstance(exps, ExponentSet):
            raw = np.array(exps, dtype=complex, ndmin=1).ravel()
            if raw.size != coeffs.size:
                raise ArgumentError(
                    f"Got {raw.size} exponents and {coeffs.size} coefficients."
                )
            coeffs = coeffs[canonical_order(raw)]
            exps = ExponentSet(raw)
        if exps.n != coeffs.size:
            raise ArgumentError(
                f"Got {exps.n} exponents and {coeffs.size} coefficients."
            )
        if not allow_zero and not np.any(coeffs):
            raise ArgumentError(
                "All coefficients are zero; pass allow_zero=True for the zero "
                "sum."
            )
        coeffs.flags.writeable = False
        self.exps = exps
        self.coeffs = coeffs

    @property
    def n(self):
        return self.exps.n

    def __call__(self, t):
        return evaluate(self, t)

    def deriv(self):
        return differentiate(self)

    def __mul__(self, scalar):
        return ExpSum(self.exps, scalar*self.coeffs, allow_zero=True)

    __rmul__ = __mul__

    def __neg__(self):
        return self*-1

    def __repr__(self):
        terms = " + ".join(
            f"({a:.6g})exp({lam:.6g}t)"
            for a, lam in zip(self.coeffs, self.exps)
        )
        return f"ExpSum({terms})"


def evaluate(f, t):
    """ sum_j a_j exp(lambda_j t), vectorised over t.

    Args:
        f: ExpSum
        t: scalar or array of (complex) points

    Returns:
        complex scalar for scalar t, otherwise array shaped like t
    """
    t_arr = np.asarray(t, dtype=complex)
    flat = t_arr.ravel()
    out = np.empty(flat.size, dtype=complex)
    lam = f.exps.exponents
    for start in range(0, flat.size, _EVAL_CHUNK):
        block = flat[start:start + _EVAL_CHUNK]
        out[start:start + _EVAL_CHUNK] = (
            np.exp(np.multiply.outer(block, lam)) @ f.coeffs
        )
    if t_arr.ndim == 0:
        return complex(out[0])
    return out.reshape(t_arr.shape)


def differentiate(f):
    return ExpSum(f.exps, f.exps.exponents*f.coeffs, allow_zero=True)


def substitute_linear(f, alpha, beta):
    """ g(t) = f(alpha t + beta).

    Args:
        f: ExpSum
        alpha: nonzero real scale
        beta: real shift

    Returns:
        ExpSum with exponents alpha*lambda_j and coefficients
        a_j exp(lambda_j beta)
    """
    if alpha == 0:
        raise ArgumentError("Linear substitution needs alpha != 0.")
    lam = f.exps.exponents
    return ExpSum(alpha*lam, f.coeffs*np.exp(lam*beta), allow_zero=True)


def reflect(f):
    """ g(t) = f(-t) """
    return substitute_linear(f, -1.0, 0.0)


def weighted(f, weight_rate):
    """ f(t) exp(-c t / 2), the function whose plain norm is the weighted norm
    of f under NormSpec(weight_rate=c).
    """
    if weight_rate == 0:
        return f
    return ExpSum(
        f.exps.exponents - weight_rate/2, f.coeffs, allow_zero=True
    )
