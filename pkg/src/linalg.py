""" Dense Hermitian linear algebra for Gram matrices: Cholesky, triangular
solves, a cyclic Jacobi eigensolver and the generalized eigenproblem.
"""
import logging
import math

import numpy as np

from src.errors import (
    ConditionExceeded, EigenFailure, NotPositiveDefinite
)

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-14  # relative to the largest diagonal entry
CONDITION_LIMIT = 1e12
JACOBI_TOL = 1e-14
JACOBI_SWEEPS = 100


class HermitianMatrix:
    """ Hermitian matrix with memoised Cholesky factor and spectrum.

    The entries are averaged with their conjugate transpose on construction,
    so entries[j, k] == conj(entries[k, j]) holds exactly and the diagonal is
    real.
    """
    def __init__(self, entries, meta=None):
        M = np.array(entries, dtype=complex, ndmin=2)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"Expected a square matrix, got shape {M.shape}.")
        M = (M + M.conj().T) / 2
        M[np.diag_indices_from(M)] = M.diagonal().real
        M.flags.writeable = False
        self.entries = M
        self.meta = meta
        self._factor = None
        self._eigen = None

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def norm(self):
        return float(np.linalg.norm(self.entries))

    def factor(self):
        if self._factor is None:
            self._factor = cholesky(self)
        return self._factor

    def eigen(self):
        if self._eigen is None:
            self._eigen = eigen_hermitian(self)
        return self._eigen

    def condition(self):
        return condition(self)

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim}, meta={self.meta!r})"


def _as_hermitian(G):
    return G if isinstance(G, HermitianMatrix) else HermitianMatrix(G)


def cholesky(G):
    """ Lower triangular L with L L* = G.

    Args:
        G: HermitianMatrix

    Returns:
        L as a complex 2-d array
    """
    A = _as_hermitian(G).entries
    n = A.shape[0]
    L = np.zeros((n, n), dtype=complex)
    max_diag = float(np.max(A.diagonal().real)) if n else 0.0
    for j in range(n):
        pivot = A[j, j].real - np.sum(np.abs(L[j, :j])**2)
        if pivot <= 0 or pivot < PIVOT_TOL*max_diag:
            raise NotPositiveDefinite(
                f"Pivot {pivot:.3e} at index {j} (largest diagonal entry "
                f"{max_diag:.3e}); the matrix is not numerically positive "
                f"definite."
            )
        L[j, j] = math.sqrt(pivot)
        L[j + 1:, j] = (
            A[j + 1:, j] - L[j + 1:, :j] @ L[j, :j].conj()
        ) / L[j, j]
    return L


def forward_substitution(L, b):
    """ Solve L x = b for lower triangular L; b may have several columns. """
    x = np.array(b, dtype=complex)
    for i in range(L.shape[0]):
        x[i] = (x[i] - L[i, :i] @ x[:i]) / L[i, i]
    return x


def back_substitution(U, b):
    """ Solve U x = b for upper triangular U; b may have several columns. """
    x = np.array(b, dtype=complex)
    for i in reversed(range(U.shape[0])):
        x[i] = (x[i] - U[i, i + 1:] @ x[i + 1:]) / U[i, i]
    return x


def guard_condition(G, limit=CONDITION_LIMIT):
    """ Raise ConditionExceeded if cond(G) > limit; return cond(G). """
    cond = condition(G)
    if cond > limit:
        raise ConditionExceeded(cond, limit)
    return cond


def quad_form_inv(G, v, return_solution=False, limit=CONDITION_LIMIT):
    """ v* G^-1 v via two triangular solves.

    Args:
        G: positive definite HermitianMatrix
        v: complex vector
        return_solution: also return c = G^-1 v
        limit: largest condition number accepted

    Returns:
        value, or (value, c) when return_solution is set
    """
    G = _as_hermitian(G)
    L = G.factor()
    guard_condition(G, limit)
    y = forward_substitution(L, np.asarray(v, dtype=complex))
    value = float(np.sum(np.abs(y)**2))
    if return_solution:
        return value, back_substitution(L.conj().T, y)
    return value


def eigen_hermitian(A):
    """ Eigen decomposition of a Hermitian matrix by cyclic complex Jacobi
    rotations.

    Args:
        A: HermitianMatrix

    Returns:
        (eigenvalues ascending, eigenvectors as columns)
    """
    A = _as_hermitian(A)
    M = np.array(A.entries)
    n = M.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(M)
    for sweep in range(JACOBI_SWEEPS):
        off = np.linalg.norm(M - np.diag(M.diagonal()))
        logger.debug("jacobi sweep=%d off=%.3e", sweep, off)
        if off <= JACOBI_TOL*scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = M[p, q]
                mag = abs(apq)
                if mag <= 1e-18*scale:
                    M[p, q] = M[q, p] = 0
                    continue
                phase = apq / mag
                theta = (M[q, q].real - M[p, p].real) / (2*mag)
                t = (1.0 if theta >= 0 else -1.0) / (
                    abs(theta) + math.sqrt(theta**2 + 1)
                )
                c = 1 / math.sqrt(1 + t**2)
                s = t*c

                col_p = M[:, p].copy()
                col_q = M[:, q]*phase.conjugate()
                M[:, p] = c*col_p - s*col_q
                M[:, q] = s*col_p + c*col_q

                row_p = M[p, :].copy()
                row_q = M[q, :]*phase
                M[p, :] = c*row_p - s*row_q
                M[q, :] = s*row_p + c*row_q

                M[p, q] = M[q, p] = 0
                M[p, p] = M[p, p].real
                M[q, q] = M[q, q].real

                vec_p = V[:, p].copy()
                vec_q = V[:, q]*phase.conjugate()
                V[:, p] = c*vec_p - s*vec_q
                V[:, q] = s*vec_p + c*vec_q
    else:
        raise EigenFailure(
            f"Jacobi iteration did not converge in {JACOBI_SWEEPS} sweeps."
        )
    w = M.diagonal().real
    order = np.argsort(w)
    return w[order], V[:, order]


def gen_eigen_max(A, B):
    """ Largest lambda with A v = lambda B v for Hermitian A and positive
    definite B, via B = L L* and the standard problem for L^-1 A L^-*.

    Returns:
        (lambda, v)
    """
    A = _as_hermitian(A)
    B = _as_hermitian(B)
    L = B.factor()
    X = forward_substitution(L, A.entries)
    C = forward_substitution(L, X.conj().T)
    w, Y = eigen_hermitian(HermitianMatrix(C))
    v = back_substitution(L.conj().T, Y[:, -1])
    return float(w[-1]), v


def condition(G):
    """ lambda_max / lambda_min, inf when lambda_min <= 0. """
    G = _as_hermitian(G)
    w, _ = G.eigen()
    if w[0] <= 0:
        return math.inf
    return float(w[-1] / w[0])
