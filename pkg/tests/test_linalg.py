import math

import numpy as np
from pytest import approx, fixture, raises

import context  # noqa
from src.errors import ConditionExceeded, NotPositiveDefinite
from src.linalg import (
    HermitianMatrix, cholesky, condition, eigen_hermitian, gen_eigen_max,
    quad_form_inv
)


@fixture()
def rng():
    rng = np.random.default_rng(31415)
    return rng


def hilbert(n):
    k = np.arange(n)
    return 1/(k[:, None] + k[None, :] + 1)


def random_hermitian(rng, n):
    M = rng.standard_normal((n, n)) + 1j*rng.standard_normal((n, n))
    return (M + M.conj().T)/2


def random_positive(rng, n):
    M = rng.standard_normal((n, n)) + 1j*rng.standard_normal((n, n))
    return M @ M.conj().T + np.eye(n)


def random_unitary(rng, n):
    M = rng.standard_normal((n, n)) + 1j*rng.standard_normal((n, n))
    Q, _ = np.linalg.qr(M)
    return Q


class TestHermitianMatrix:
    def test_symmetrised(self):
        H = HermitianMatrix([[1, 2 + 1j], [2 - 1j + 1e-15, 3]])
        assert np.array_equal(H.entries, H.entries.conj().T)
        assert H.dim == 2

    def test_not_square(self):
        with raises(ValueError):
            HermitianMatrix(np.ones((2, 3)))

    def test_memoised(self):
        H = HermitianMatrix(hilbert(3))
        assert H.factor() is H.factor()
        assert H.eigen() is H.eigen()


class TestCholesky:
    """ [x] - Hand factorisations
    [x] - Reconstruction of ill-conditioned and complex matrices
    [x] - Indefinite matrices are rejected
    """
    def test_identity(self):
        assert cholesky(np.eye(3)) == approx(np.eye(3))

    def test_two_by_two(self):
        L = cholesky([[2, 1], [1, 2]])
        expected = [[math.sqrt(2), 0], [1/math.sqrt(2), math.sqrt(1.5)]]
        assert L.real == approx(np.array(expected))

    def test_hilbert_reconstruction(self):
        L = cholesky(hilbert(3))
        assert np.max(np.abs(L @ L.conj().T - hilbert(3))) < 1e-14

    def test_complex_reconstruction(self, rng):
        G = random_positive(rng, 6)
        L = cholesky(G)
        assert np.allclose(np.triu(L, 1), 0)
        assert L @ L.conj().T == approx(G, rel=1e-12)

    def test_indefinite(self):
        with raises(NotPositiveDefinite):
            cholesky([[1, 2], [2, 1]])

    def test_negative_diagonal(self):
        with raises(NotPositiveDefinite):
            cholesky([[-1, 0], [0, 1]])


class TestQuadFormInv:
    """ [x] - Exact inverse of the Hilbert matrix
    [x] - Solutions
    [x] - Cauchy-Schwarz characterisation
    [x] - Condition guard
    """
    def test_identity(self):
        assert quad_form_inv(np.eye(3), [1, 1, 1]) == approx(3)

    def test_hilbert(self):
        H = HermitianMatrix(hilbert(3))
        assert quad_form_inv(H, [1, 1, 1]) == approx(9, rel=1e-12)
        assert quad_form_inv(H, [0, 1, 0]) == approx(192, rel=1e-12)

    def test_solution(self, rng):
        G = random_positive(rng, 5)
        v = rng.standard_normal(5) + 1j*rng.standard_normal(5)
        value, c = quad_form_inv(G, v, return_solution=True)
        assert G @ c == approx(v, rel=1e-10)
        assert value == approx(np.real(v.conj() @ c), rel=1e-12)

    def test_cauchy_schwarz(self, rng):
        G = random_positive(rng, 4)
        v = rng.standard_normal(4) + 1j*rng.standard_normal(4)
        kappa, c = quad_form_inv(G, v, return_solution=True)
        for _ in range(100):
            u = rng.standard_normal(4) + 1j*rng.standard_normal(4)
            ratio = abs(v.conj() @ u)**2/np.real(u.conj() @ G @ u)
            assert ratio <= kappa*(1 + 1e-12)
        best = abs(v.conj() @ c)**2/np.real(c.conj() @ G @ c)
        assert best == approx(kappa, rel=1e-9)

    def test_condition_exceeded(self):
        G = HermitianMatrix(np.diag([1.0, 1e-13]))
        with raises(ConditionExceeded) as err:
            quad_form_inv(G, [1, 1])
        assert err.value.condition == approx(1e13)

    def test_condition_limit(self):
        G = HermitianMatrix(np.diag([1.0, 1e-4]))
        assert quad_form_inv(G, [0, 1]) == approx(1e4)
        with raises(ConditionExceeded):
            quad_form_inv(G, [0, 1], limit=1e3)


class TestEigen:
    """ [x] - Diagonal and permutation matrices
    [x] - Agreement with numpy on complex Hermitian matrices
    [x] - Unitary invariance
    [x] - Generalized problem and Rayleigh quotient dominance
    """
    def test_diagonal(self):
        w, _ = eigen_hermitian(np.diag([3.0, 1.0, 2.0]))
        assert w == approx([1, 2, 3])

    def test_swap(self):
        w, _ = eigen_hermitian([[0, 1], [1, 0]])
        assert w == approx([-1, 1])

    def test_hilbert(self):
        w, _ = eigen_hermitian(hilbert(3))
        assert w[-1] == approx(1.408319, abs=1e-6)

    def test_against_numpy(self, rng):
        for n in (1, 2, 5, 9):
            A = random_hermitian(rng, n)
            w, V = eigen_hermitian(A)
            assert w == approx(np.linalg.eigvalsh(A), rel=1e-10, abs=1e-12)
            assert V.conj().T @ V == approx(np.eye(n), abs=1e-12)
            assert A @ V == approx(V*w, abs=1e-10)

    def test_unitary_invariance(self, rng):
        A = random_hermitian(rng, 6)
        Q = random_unitary(rng, 6)
        w, _ = eigen_hermitian(A)
        w_rotated, _ = eigen_hermitian(Q @ A @ Q.conj().T)
        assert w_rotated == approx(w, abs=1e-10)

    def test_generalized_identity(self, rng):
        A = random_hermitian(rng, 4)
        top, _ = gen_eigen_max(A, np.eye(4))
        assert top == approx(np.linalg.eigvalsh(A)[-1], rel=1e-10)

    def test_generalized_diagonal(self):
        top, _ = gen_eigen_max(np.diag([1.0, 4.0]), np.diag([1.0, 2.0]))
        assert top == approx(2)

    def test_generalized_quadratic(self):
        top, v = gen_eigen_max([[2, 1], [1, 2]], [[1, 0], [0, 2]])
        assert top == approx((3 + math.sqrt(3))/2)
        assert top == approx(2.366025, rel=1e-6)
        A, B = np.array([[2, 1], [1, 2]]), np.array([[1, 0], [0, 2]])
        assert A @ v == approx(top*(B @ v))

    def test_rayleigh_dominance(self, rng):
        A = random_hermitian(rng, 5)
        B = random_positive(rng, 5)
        top, v = gen_eigen_max(A, B)
        for _ in range(100):
            u = rng.standard_normal(5) + 1j*rng.standard_normal(5)
            quotient = np.real(u.conj() @ A @ u)/np.real(u.conj() @ B @ u)
            assert quotient <= top + 1e-12*abs(top)
        attained = np.real(v.conj() @ A @ v)/np.real(v.conj() @ B @ v)
        assert attained == approx(top, rel=1e-10)


class TestCondition:
    def test_identity(self):
        assert condition(np.eye(4)) == approx(1)

    def test_diagonal(self):
        assert condition(np.diag([1.0, 1e-6])) == approx(1e6)

    def test_hilbert(self):
        assert condition(hilbert(6)) == approx(1.495e7, rel=1e-3)

    def test_indefinite(self):
        assert condition([[0, 1], [1, 0]]) == math.inf
