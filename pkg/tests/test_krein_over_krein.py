import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kreinmod.algebra import bounded_operators, from_blocks
from kreinmod.krein_over_krein import (
    NonAdjointableError,
    alpha_J,
    auxiliary_product,
    check_imprimitivity,
    check_module_over_krein,
    is_adjointable,
    krein_adjoint_over_krein,
    operator_bimodule,
    rank_one,
    self_module,
)
from kreinmod.linalg import is_psd, min_hermitian_eig, operator_norm


def b11():
    return bounded_operators(1, 1)


class TestSelfModule:
    def test_axioms_b11(self):
        report = check_module_over_krein(self_module(b11()), samples=150, seed=0)
        assert report.passed, report.to_text()

    def test_axioms_b21(self):
        report = check_module_over_krein(
            self_module(bounded_operators(2, 1)), samples=100, seed=1
        )
        assert report.passed, report.to_text()

    def test_axioms_commutative_with_signs(self):
        eta = np.diag([1.0, -1.0, 1.0]).astype(complex)
        alg = from_blocks((1, 1, 1), eta)
        report = check_module_over_krein(self_module(alg), samples=100, seed=2)
        assert report.passed, report.to_text()

    def test_pairing_matches_algebra_product(self):
        alg = b11()
        m = self_module(alg)
        rng = np.random.default_rng(3)
        a, b = alg.random_element(rng), alg.random_element(rng)
        lhs = m.pairing(alg.coefficients(a), alg.coefficients(b))
        assert operator_norm(lhs - alg.star(a) @ b) < 1e-10

    def test_imprimitivity_exact(self):
        report = check_imprimitivity(self_module(b11()), samples=100, seed=4)
        assert report.passed, report.to_text()

    def test_auxiliary_product_positive(self):
        m = self_module(b11())
        rng = np.random.default_rng(5)
        for _ in range(25):
            x = m.random_element(rng)
            assert is_psd(auxiliary_product(m, x, x))


class TestSymmetryAdjointability:
    def test_symmetry_not_adjointable_when_twisted(self):
        # on the algebra over itself, J = alpha has no adjoint for the
        # indefinite product unless alpha is the identity
        m = self_module(b11())
        assert not is_adjointable(m, m.symmetry)
        with pytest.raises(NonAdjointableError):
            krein_adjoint_over_krein(m, m.symmetry)

    def test_symmetry_adjointable_in_definite_case(self):
        alg = from_blocks((2,), np.eye(2))
        m = self_module(alg)
        s = krein_adjoint_over_krein(m, m.symmetry)
        assert operator_norm(s - m.symmetry) < 1e-8

    def test_left_multiplication_adjoint_is_star(self):
        alg = b11()
        m = self_module(alg)
        rng = np.random.default_rng(6)
        a = alg.random_element(rng)
        # left multiplication by a, as a matrix on coefficient space
        la = np.stack(
            [
                alg.coefficients(a @ alg.from_coefficients(np.eye(m.dim)[k]))
                for k in range(m.dim)
            ],
            axis=1,
        )
        adj = krein_adjoint_over_krein(m, la)
        lstar = np.stack(
            [
                alg.coefficients(alg.star(a) @ alg.from_coefficients(np.eye(m.dim)[k]))
                for k in range(m.dim)
            ],
            axis=1,
        )
        assert operator_norm(adj - lstar) < 1e-8

    def test_adjoint_relation_holds(self):
        m = self_module(b11())
        rng = np.random.default_rng(7)
        t = rank_one(m, m.random_element(rng), m.random_element(rng))
        s = krein_adjoint_over_krein(m, t)
        for _ in range(20):
            x, y = m.random_element(rng), m.random_element(rng)
            lhs = m.pairing(t @ x, y)
            rhs = m.pairing(x, s @ y)
            assert operator_norm(lhs - rhs) < 1e-8 * max(
                np.linalg.norm(x) * np.linalg.norm(y), 1.0
            )


class TestAlphaJ:
    def test_involutive(self):
        m = self_module(b11())
        rng = np.random.default_rng(8)
        t = rank_one(m, m.random_element(rng), m.random_element(rng))
        assert operator_norm(alpha_J(m, alpha_J(m, t)) - t) < 1e-10

    def test_multiplicative(self):
        m = self_module(b11())
        rng = np.random.default_rng(9)
        t = rank_one(m, m.random_element(rng), m.random_element(rng))
        s = rank_one(m, m.random_element(rng), m.random_element(rng))
        assert (
            operator_norm(alpha_J(m, t @ s) - alpha_J(m, t) @ alpha_J(m, s)) < 1e-9
        )

    def test_star_compatibility_with_cstar_identity(self):
        # alpha_J(T*) (T) has the operator norm squared in the auxiliary
        # hilbertified picture; spot-check the identity through the adjoint
        m = self_module(b11())
        rng = np.random.default_rng(10)
        for _ in range(10):
            t = rank_one(m, m.random_element(rng), m.random_element(rng))
            ts = krein_adjoint_over_krein(m, t)
            a = alpha_J(m, ts)
            n = operator_norm(_aux_rep(m, t))
            lhs = operator_norm(_aux_rep(m, a @ t))
            assert lhs == pytest.approx(n * n, rel=1e-8)


def _aux_rep(m, t):
    """Matrix of t in coordinates where the auxiliary product is standard."""
    g = np.zeros((m.dim, m.dim), dtype=complex)
    for i in range(m.dim):
        for j in range(m.dim):
            g[i, j] = np.trace(auxiliary_product(m, np.eye(m.dim)[i], np.eye(m.dim)[j]))
    l = np.linalg.cholesky((g + g.conj().T) / 2).conj().T
    return l @ t @ np.linalg.inv(l)


class TestRankOne:
    def test_rank_at_most_algebra_dim(self):
        m = self_module(bounded_operators(2, 1))
        rng = np.random.default_rng(11)
        t = rank_one(m, m.random_element(rng), m.random_element(rng))
        # rank-one over the algebra, so rank <= dim of the algebra's space
        assert np.linalg.matrix_rank(t) <= m.algebra.dim * m.algebra.dim

    def test_action_formula(self):
        m = self_module(b11())
        rng = np.random.default_rng(12)
        x, y, z = (m.random_element(rng) for _ in range(3))
        t = rank_one(m, x, y)
        assert np.allclose(t @ z, m.act(x, m.pairing(y, z)), atol=1e-10)

    @given(st.integers(0, 500))
    @settings(max_examples=15, deadline=None)
    def test_adjoint_swaps_arguments(self, seed):
        m = self_module(b11())
        rng = np.random.default_rng(seed)
        x, y = m.random_element(rng), m.random_element(rng)
        adj = krein_adjoint_over_krein(m, rank_one(m, x, y))
        swapped = rank_one(m, y, x)
        assert operator_norm(adj - swapped) < 1e-7 * max(
            operator_norm(swapped), 1.0
        )


class TestOperatorBimodule:
    def test_axioms_mixed_signatures(self):
        m = operator_bimodule(bounded_operators(1, 1), bounded_operators(2, 1))
        report = check_module_over_krein(m, samples=100, seed=13)
        assert report.passed, report.to_text()

    def test_imprimitivity(self):
        m = operator_bimodule(bounded_operators(1, 1), bounded_operators(1, 1))
        report = check_imprimitivity(m, samples=100, seed=14)
        assert report.passed, report.to_text()

    def test_symmetry_squares_to_identity(self):
        m = operator_bimodule(bounded_operators(2, 1), bounded_operators(1, 1))
        assert operator_norm(m.symmetry @ m.symmetry - np.eye(m.dim)) < 1e-12

    def test_auxiliary_product_definite(self):
        m = operator_bimodule(bounded_operators(1, 1), bounded_operators(1, 1))
        rng = np.random.default_rng(15)
        for _ in range(20):
            x = m.random_element(rng)
            aux = auxiliary_product(m, x, x)
            assert min_hermitian_eig(aux) >= -1e-10
