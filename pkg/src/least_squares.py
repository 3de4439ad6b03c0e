import numpy as np


class least_squares:
    """ A weighted linear least-squares problem: for which x is

        sum_i w_i |(Ax - b)_i|^2

    smallest? A, b and x may be complex. The minimax iteration solves one of
    these per step with its current Lawson weights, the trend fit solves an
    unweighted one on log-log data.

    ls = least_squares(A, b)            # unit weights
    ls = least_squares(A, b, w)
    ls(x)                               # weighted squared residual
    ls.residual(x)                      # Ax - b, no weights applied
    ls.solve_minimum()                  # {"x*", "r", "rk", "s"}
    """
    def __init__(self, A, b, w=None):
        """
        Args:
            A: matrix with one row per equation (scalars and vectors are
                promoted to 2-d)
            b: right-hand side, one entry per row of A
            w: nonnegative row weights, default all one
        """
        self.A = np.array(A, ndmin=2)
        self.b = np.array(b).reshape((-1, 1))
        rows = self.b.shape[0]
        if self.A.shape[0] != rows:
            raise ValueError(
                f"A has {self.A.shape[0]} rows but b has {rows} entries: "
                f"\n{self.A.shape}, {self.A}\n{self.b.shape}, {self.b}."
            )
        self.w = np.ones(rows) if w is None else \
            np.asarray(w, dtype=float).ravel()
        if self.w.shape[0] != rows:
            raise ValueError(
                f"Need one weight per row, got {self.w.shape[0]} weights "
                f"for {rows} rows."
            )
        if np.any(self.w < 0):
            raise ValueError(f"Weights must be nonnegative, got {self.w}.")

    def _column(self, x):
        col = np.asarray(x).reshape(-1, 1)
        if col.shape[0] != self.A.shape[1]:
            raise ValueError(
                f"Shape mismatch, A: {self.A.shape}, x: {col.shape}."
            )
        return col

    def residual(self, x):
        return (self.A @ self._column(x) - self.b).ravel()

    def __call__(self, x):
        """ sum_i w_i |(Ax - b)_i|^2, e.g.

        least_squares([[1], [1]], [0, 3], [2, 1])(1)
        >> 6.0
        """
        return float(np.sum(self.w*np.abs(self.residual(x))**2))

    def solve_minimum(self):
        """ Minimiser of the weighted problem. Rows are scaled by sqrt(w_i)
        and the plain problem goes to numpy.linalg.lstsq; a zero weight drops
        its row.

        Returns:
            {
                "x*": minimiser as a column
                "r": weighted residual sum of squares (empty unless the
                    scaled system is overdetermined and of full rank)
                "rk": rank of the scaled A
                "s": singular values of the scaled A
            }
        """
        root = np.sqrt(self.w).reshape(-1, 1)
        x, r, rank, s = np.linalg.lstsq(root*self.A, root*self.b, rcond=None)
        return {"x*": x, "r": r, "rk": rank, "s": s}
