import numpy as np
import pytest

from kreinmod.algebra import (
    FiniteCStarAlgebra,
    KreinCStarAlgebra,
    bounded_operators,
    check_krein_cstar_axioms,
    cstar_norm,
    even_odd_split,
    from_blocks,
    fundamental_symmetry,
    functions_on_points,
    krein_involution,
)
from kreinmod.linalg import ValidationError, operator_norm


def eta_pq(p, q):
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)


class TestFiniteCStarAlgebra:
    def test_dims(self):
        alg = FiniteCStarAlgebra((2, 1))
        assert alg.dim == 3
        assert alg.vector_dim == 5

    def test_projection_is_blockwise(self):
        alg = FiniteCStarAlgebra((2, 1))
        m = np.ones((3, 3), dtype=complex)
        p = alg.project(m)
        assert p[0, 2] == 0 and p[2, 0] == 0 and p[0, 1] == 1

    def test_random_element_in_blocks(self):
        alg = FiniteCStarAlgebra((2, 2))
        a = alg.random_element(np.random.default_rng(0))
        assert alg.contains(a)

    def test_commutative_case(self):
        alg = functions_on_points(4)
        a = alg.random_element(np.random.default_rng(1))
        b = alg.random_element(np.random.default_rng(2))
        assert operator_norm(a @ b - b @ a) < 1e-12


class TestKreinInvolution:
    def test_identity_fixed(self):
        A = bounded_operators(1, 1)
        assert np.allclose(krein_involution(A, np.eye(2)), np.eye(2))

    def test_nilpotent_on_c11(self):
        # eta a† eta for a = [[0,1],[0,0]], eta = diag(1,-1)
        A = bounded_operators(1, 1)
        a = np.array([[0, 1], [0, 0]], dtype=complex)
        expected = np.array([[0, 0], [-1, 0]], dtype=complex)
        assert np.allclose(krein_involution(A, a), expected, atol=1e-14)

    def test_fixes_hermitian_commuting_with_eta(self):
        A = bounded_operators(1, 1)
        a = np.diag([2.0, 5.0]).astype(complex)
        assert np.allclose(krein_involution(A, a), a)

    def test_adjoint_identity_for_indefinite_form(self):
        # form(a x, y) == form(x, star(a) y) with form(x, y) = x† eta y
        A = bounded_operators(2, 1)
        rng = np.random.default_rng(9)
        for _ in range(20):
            a = A.random_element(rng)
            x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            y = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            lhs = (a @ x).conj() @ A.eta @ y
            rhs = x.conj() @ A.eta @ (krein_involution(A, a) @ y)
            assert abs(lhs - rhs) < 1e-10 * max(abs(lhs), 1.0)


class TestFundamentalSymmetry:
    def test_eta_fixed(self):
        A = bounded_operators(1, 1)
        assert np.allclose(fundamental_symmetry(A, A.eta), A.eta)

    def test_nilpotent(self):
        A = bounded_operators(1, 1)
        a = np.array([[0, 1], [0, 0]], dtype=complex)
        assert np.allclose(
            fundamental_symmetry(A, a), np.array([[0, -1], [0, 0]]), atol=1e-14
        )

    def test_commuting_element_fixed(self):
        A = bounded_operators(1, 1)
        a = np.diag([3.0, 7.0]).astype(complex)
        assert np.allclose(fundamental_symmetry(A, a), a)


class TestCStarNorm:
    def test_identity(self):
        A = bounded_operators(2, 2)
        assert cstar_norm(A, np.eye(4)) == pytest.approx(1.0)

    def test_single_singular_value(self):
        A = bounded_operators(1, 1)
        a = np.array([[0, 2], [0, 0]], dtype=complex)
        assert cstar_norm(A, a) == pytest.approx(2.0)

    def test_twisted_cstar_identity_sweep(self):
        A = bounded_operators(2, 1)
        rng = np.random.default_rng(42)
        worst = 0.0
        for _ in range(1000):
            a = A.random_element(rng)
            n = cstar_norm(A, a)
            lhs = cstar_norm(A, A.alpha(A.star(a)) @ a)
            worst = max(worst, abs(lhs - n * n) / (n * n))
        assert worst < 1e-9


class TestEvenOddSplit:
    def test_eta_is_even(self):
        A = bounded_operators(1, 1)
        even, odd = even_odd_split(A, A.eta)
        assert np.allclose(even, A.eta) and np.allclose(odd, 0)

    def test_offdiagonal_is_odd(self):
        A = bounded_operators(1, 1)
        a = np.array([[0, 1], [1, 0]], dtype=complex)
        even, odd = even_odd_split(A, a)
        assert np.allclose(even, 0) and np.allclose(odd, a)

    def test_identity_is_even(self):
        A = bounded_operators(2, 1)
        even, odd = even_odd_split(A, np.eye(3))
        assert np.allclose(even, np.eye(3)) and np.allclose(odd, 0)

    def test_reconstruction_and_grading(self):
        A = bounded_operators(2, 2)
        rng = np.random.default_rng(5)
        for _ in range(20):
            a, b = A.random_element(rng), A.random_element(rng)
            ea, oa = even_odd_split(A, a)
            eb, ob = even_odd_split(A, b)
            assert operator_norm(ea + oa - a) < 1e-12
            assert operator_norm(even_odd_split(A, oa @ ob)[1]) < 1e-10
            assert operator_norm(even_odd_split(A, ea @ ob)[0]) < 1e-10


class TestAxiomChecker:
    def test_c11_passes(self):
        report = check_krein_cstar_axioms(bounded_operators(1, 1), samples=500, seed=7)
        assert report.passed, report.to_text()

    def test_plain_cstar_degenerate_case(self):
        # eta = identity: alpha is the identity automorphism
        A = KreinCStarAlgebra(FiniteCStarAlgebra((2,)).basis(), np.eye(2))
        assert A.is_trivially_definite
        a = A.random_element(np.random.default_rng(0))
        assert np.allclose(A.alpha(a), a)
        report = check_krein_cstar_axioms(A, samples=100, seed=1)
        assert report.passed

    def test_corrupted_eta_fails(self):
        basis = FiniteCStarAlgebra((2,)).basis()
        bad_eta = np.diag([1.0, -2.0]).astype(complex)
        with pytest.raises(ValidationError):
            KreinCStarAlgebra(basis, bad_eta)
        # the checker itself reports (not raises) when validation is skipped
        A = KreinCStarAlgebra(basis, bad_eta, validate=False)
        report = check_krein_cstar_axioms(A, samples=50, seed=2)
        failed = {r.name for r in report.failures()}
        assert "eta involutive" in failed

    def test_block_algebra_with_eta(self):
        # commutative functions on 4 points, pointwise signs (+,+,-,-)
        A = from_blocks((1, 1, 1, 1), eta_pq(2, 2))
        report = check_krein_cstar_axioms(A, samples=200, seed=3)
        assert report.passed, report.to_text()

    def test_deterministic_for_fixed_seed(self):
        r1 = check_krein_cstar_axioms(bounded_operators(2, 1), samples=50, seed=11)
        r2 = check_krein_cstar_axioms(bounded_operators(2, 1), samples=50, seed=11)
        assert r1.to_json() == r2.to_json()
