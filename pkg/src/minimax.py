import logging

import numpy as np

from src.errors import ArgumentError, MinimaxStall
from src.least_squares import least_squares
from src.result import OptimisationResult

logger = logging.getLogger(__name__)

STALL_TOL = 1e-14
STALL_WINDOW = 50


def sigma_minimax(
            k,
            grid=4096,
            gap_tol=1e-3,
            maxiter=5000,
            save_path=False,
        ):
    """ Discrete minimax of |P(z)| over the grid points of the unit circle for
    polynomials P of degree k with P(0) = 1 and P(1) = 0, by Lawson's
    iteratively reweighted least squares.

    P is parameterised as (1 - z) Q(z) with Q(0) = 1, so every iterate meets
    both constraints. Each step solves the weighted least-squares problem,
    whose value is a lower bound of the discrete minimax because the weights
    sum to one, and multiplies the weights by |P| on the grid.

    Args:
        k: degree, k >= 1
        grid: number of equispaced points on the circle, at least 64(k+1)
        gap_tol: stop when (upper - lower) <= gap_tol*upper
        maxiter: maximum number of iterations
        save_path: keep the upper bound of every iteration in
            result.solution_path

    Returns:
        OptimisationResult with x the coefficients of P (ascending powers),
        fun the discrete max of |P| and bound the certified lower bound
    """
    if k < 1:
        raise ArgumentError(f"Need k >= 1, got k = {k}.")
    if grid < 64*(k + 1):
        raise ArgumentError(
            f"Need at least {64*(k + 1)} grid points for k = {k}, got {grid}."
        )
    z = np.exp(2j*np.pi*np.arange(grid)/grid)
    b = 1 - z
    if k == 1:
        # 1 - z is the only admissible polynomial
        top = float(np.max(np.abs(b)))
        return OptimisationResult(
            success=True,
            x=np.array([1.0, -1.0], dtype=complex),
            niter=0,
            nfev=1,
            fun=top,
            bound=top,
        )
    A = b[:, None]*z[:, None]**np.arange(1, k)[None, :]
    w = np.full(grid, 1/grid)

    best_upper, best_q = np.inf, None
    lower = 0.0
    stalled = 0
    solution_path = [] if save_path else None
    for niter in range(maxiter):
        q = least_squares(A, -b, w).solve_minimum()["x*"].ravel()
        r = np.abs(b + A @ q)
        previous = lower
        lower = max(lower, float(np.sqrt(np.sum(w*r**2))))
        upper = float(np.max(r))
        if upper < best_upper:
            best_upper, best_q = upper, q
        if save_path:
            solution_path.append(upper)
        logger.debug("lawson k=%d iter=%d lower=%.12g upper=%.12g",
                     k, niter, lower, best_upper)

        if best_upper - lower <= gap_tol*best_upper:
            break
        if abs(lower - previous) <= STALL_TOL*lower:
            stalled += 1
            if stalled >= STALL_WINDOW:
                raise MinimaxStall(
                    f"Lawson iteration for k = {k} stalled at gap "
                    f"{best_upper - lower:.3e}.",
                    _result(False, best_q, niter + 1, best_upper, lower,
                            "Stalled.", solution_path),
                )
        else:
            stalled = 0

        w = w*r
        w = w/np.sum(w)
    else:
        return _result(
            False, best_q, maxiter, best_upper, lower,
            "Maximum number of iterations exceeded.", solution_path,
        )

    return _result(True, best_q, niter + 1, best_upper, lower, None,
                   solution_path)


def _result(success, q, niter, upper, lower, info, path):
    coeffs = np.convolve(np.concatenate(([1.0], q)), [1.0, -1.0])
    return OptimisationResult(
        success=success,
        x=coeffs,
        niter=niter,
        nfev=niter,
        fun=upper,
        bound=lower,
        info=info,
        path=path,
    )
