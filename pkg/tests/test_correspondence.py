import numpy as np
import pytest
import scipy.linalg

from kreinmod.algebra import bounded_operators
from kreinmod.clifford import PseudoEuclideanSpace
from kreinmod.correspondence import (
    DegenerateDescentError,
    ResourceBudgetError,
    TensorCorrespondence,
    associativity_iso,
    check_correspondence,
    check_krein_star_hom,
    check_morphism,
    contragredient,
    double_contragredient_iso,
    even_odd_decomposition_check,
    identity_correspondence,
    internal_tensor,
    krein_space_correspondence,
    left_unit_iso,
    morita_krein_check,
    right_unit_iso,
    spinor_correspondence,
    spinor_factorization_check,
)
from kreinmod.linalg import ValidationError, eig_signature, operator_norm


def m2_algebra():
    return bounded_operators(2, 0)


class TestCorrespondenceAxioms:
    def test_identity_correspondence_b11(self):
        report = check_correspondence(
            identity_correspondence(bounded_operators(1, 1)), samples=100, seed=0
        )
        assert report.passed, report.to_text()

    def test_krein_space_correspondence(self):
        report = check_correspondence(
            krein_space_correspondence(1, 1), samples=100, seed=1
        )
        assert report.passed, report.to_text()

    def test_spinor_correspondence(self):
        report = check_correspondence(
            spinor_correspondence(PseudoEuclideanSpace(1, 1)), samples=100, seed=2
        )
        assert report.passed, report.to_text()


class TestStarHomChecker:
    def test_identity_map_passes(self):
        A = bounded_operators(1, 1)
        report = check_krein_star_hom(lambda a: a, A, A, samples=100, seed=3)
        assert report.passed, report.to_text()

    def test_krein_unitary_conjugation_passes(self):
        # u = exp(k) with k skew for the twisted involution and even, so
        # conjugating alpha by u gives back alpha
        A = bounded_operators(1, 1)
        rng = np.random.default_rng(4)
        k = A.random_element(rng)
        k = (k - A.star(k)) / 2
        k = (k + A.alpha(k)) / 2
        u = scipy.linalg.expm(k)
        uinv = np.linalg.inv(u)
        report = check_krein_star_hom(
            lambda a: u @ a @ uinv, A, A, samples=100, seed=5
        )
        assert report.passed, report.to_text()

    def test_broken_intertwining_fails_exactly_that_clause(self):
        A = bounded_operators(1, 1)
        report = check_krein_star_hom(
            lambda a: a, A, A, beta=lambda b: b, samples=100, seed=6
        )
        failed = {r.name for r in report.failures()}
        assert failed == {"intertwines alpha and beta"}


class TestInternalTensor:
    def test_m2_self_tensor_dimension(self):
        ident = identity_correspondence(m2_algebra())
        t = internal_tensor(ident, ident)
        assert t.dim == 4

    def test_m2_self_tensor_is_correspondence(self):
        ident = identity_correspondence(m2_algebra())
        t = internal_tensor(ident, ident)
        report = check_correspondence(t, samples=100, seed=7)
        assert report.passed, report.to_text()

    def test_scalar_tensor_preserves_dimension(self):
        m = krein_space_correspondence(2, 1)
        ident = identity_correspondence(m.algebra)
        t = internal_tensor(m, ident)
        assert t.dim == 3

    def test_krein_sign_bookkeeping(self):
        # C^{1,1} (x) C^{1,1} over the scalars: 4-dim, symmetry signature (2,2)
        m = krein_space_correspondence(1, 1)
        t = internal_tensor(m, m)
        assert t.dim == 4
        j = t.symmetry
        assert operator_norm(j - j.conj().T) < 1e-10
        assert eig_signature(j) == (2, 2)

    def test_elementary_inner_formula(self):
        m = identity_correspondence(m2_algebra())
        t = internal_tensor(m, m)
        rng = np.random.default_rng(8)
        for _ in range(20):
            x1, y1 = m.random_element(rng), m.random_element(rng)
            x2, y2 = m.random_element(rng), m.random_element(rng)
            lhs = t.pairing(t.elementary(x1, y1), t.elementary(x2, y2))
            rhs = m.pairing(y1, m.act_left(m.pairing(x1, x2), y2))
            assert operator_norm(lhs - rhs) < 1e-9

    def test_section_independence(self):
        m = krein_space_correspondence(1, 1)
        t1 = internal_tensor(m, m)
        t2 = internal_tensor(m, m, section_rotation=np.random.default_rng(9))
        # change of basis from t2 coordinates to t1 coordinates
        c = t1.projector @ t2.section
        moved = np.einsum("au,bv,abcd->uvcd", c.conj(), c, t1.inner)
        assert np.linalg.norm(moved - t2.inner) < 1e-9

    def test_budget_exceeded(self):
        ident = identity_correspondence(m2_algebra())
        with pytest.raises(ResourceBudgetError):
            internal_tensor(ident, ident, budget=10)

    def test_middle_mismatch_rejected(self):
        m = krein_space_correspondence(1, 1)
        ident = identity_correspondence(m2_algebra())
        with pytest.raises(ValidationError):
            internal_tensor(m, ident)

    def test_decomposition_even_odd(self):
        m = krein_space_correspondence(1, 1)
        t = internal_tensor(m, m)
        report = even_odd_decomposition_check(t, m, m)
        assert report.passed, report.to_text()

    def test_decomposition_m2(self):
        ident = identity_correspondence(bounded_operators(1, 1))
        t = internal_tensor(ident, ident)
        report = even_odd_decomposition_check(t, ident, ident)
        assert report.passed, report.to_text()


class TestUnitLaws:
    def test_right_unit_m2(self):
        iso = right_unit_iso(identity_correspondence(m2_algebra()))
        report = check_morphism(iso, samples=100, seed=10)
        assert report.passed, report.to_text()

    def test_left_unit_m2(self):
        iso = left_unit_iso(identity_correspondence(m2_algebra()))
        report = check_morphism(iso, samples=100, seed=11)
        assert report.passed, report.to_text()

    def test_right_unit_spinor(self):
        iso = right_unit_iso(spinor_correspondence(PseudoEuclideanSpace(1, 1)))
        report = check_morphism(iso, samples=100, seed=12)
        assert report.passed, report.to_text()

    def test_left_unit_krein_space(self):
        iso = left_unit_iso(krein_space_correspondence(2, 1))
        report = check_morphism(iso, samples=100, seed=13)
        assert report.passed, report.to_text()


class TestAssociativity:
    def test_identity_chain(self):
        ident = identity_correspondence(bounded_operators(1, 1))
        iso, lhs, rhs = associativity_iso(ident, ident, ident)
        report = check_morphism(iso, samples=100, seed=14)
        assert report.passed, report.to_text()

    def test_m2_chain(self):
        ident = identity_correspondence(m2_algebra())
        iso, lhs, rhs = associativity_iso(ident, ident, ident)
        assert lhs.dim == 4 and rhs.dim == 4
        report = check_morphism(iso, samples=100, seed=15)
        assert report.passed, report.to_text()

    def test_mixed_signature_scalar_chain(self):
        m = krein_space_correspondence(1, 1)
        n = krein_space_correspondence(1, 0)
        p = krein_space_correspondence(0, 1)
        iso, lhs, rhs = associativity_iso(m, n, p)
        assert lhs.dim == 2 and rhs.dim == 2
        report = check_morphism(iso, samples=100, seed=16)
        assert report.passed, report.to_text()


class TestContragredient:
    def test_identity_contragredient_axioms(self):
        cbar = contragredient(identity_correspondence(bounded_operators(1, 1)))
        report = check_correspondence(cbar, samples=100, seed=17)
        assert report.passed, report.to_text()

    def test_inner_values_transported(self):
        m = identity_correspondence(bounded_operators(1, 1))
        mbar = contragredient(m)
        rng = np.random.default_rng(18)
        x, y = m.random_element(rng), m.random_element(rng)
        # the conjugate-linear identification x -> conj(x)
        assert operator_norm(
            mbar.pairing(x.conj(), y.conj()) - m.pairing_left(x, y)
        ) < 1e-10
        assert operator_norm(
            mbar.pairing_left(x.conj(), y.conj()) - m.pairing(x, y)
        ) < 1e-10

    def test_action_transport(self):
        m = spinor_correspondence(PseudoEuclideanSpace(1, 1))
        mbar = contragredient(m)
        rng = np.random.default_rng(19)
        x = m.random_element(rng)
        a = m.left_algebra.random_element(rng)
        # x-bar . a = conj(star(a) . x)
        lhs = mbar.act(x.conj(), a)
        rhs = m.act_left(m.left_algebra.star(a), x).conj()
        assert np.linalg.norm(lhs - rhs) < 1e-10

    def test_double_contragredient_is_identity(self):
        for corr in (
            identity_correspondence(bounded_operators(1, 1)),
            spinor_correspondence(PseudoEuclideanSpace(1, 1)),
        ):
            iso = double_contragredient_iso(corr)
            report = check_morphism(iso, samples=100, seed=20)
            assert report.passed, report.to_text()
            back = iso.target
            assert np.linalg.norm(back.action - corr.action) < 1e-12
            assert np.linalg.norm(back.symmetry - corr.symmetry) < 1e-12


class TestMoritaKrein:
    def test_self_module_certified(self):
        report = morita_krein_check(
            identity_correspondence(bounded_operators(1, 1)), samples=100, seed=21
        )
        assert report.passed, report.to_text()

    def test_spinor_bimodule_certified_11(self):
        report = morita_krein_check(
            spinor_correspondence(PseudoEuclideanSpace(1, 1)), samples=100, seed=22
        )
        assert report.passed, report.to_text()

    def test_spinor_bimodule_certified_22(self):
        report = morita_krein_check(
            spinor_correspondence(PseudoEuclideanSpace(2, 2)), samples=60, seed=23
        )
        assert report.passed, report.to_text()

    def test_non_full_sub_bimodule_fails_fullness(self):
        # view the spinor bimodule over the direct sum of two copies of its
        # left algebra, acting through the first summand only: the left
        # products land in one block and cannot be full
        from kreinmod.algebra import FiniteCStarAlgebra, KreinCStarAlgebra

        m = spinor_correspondence(PseudoEuclideanSpace(1, 1))
        d = m.dim
        a_form = m.symmetry
        doubled = KreinCStarAlgebra(
            FiniteCStarAlgebra((d, d)).basis(),
            scipy.linalg.block_diag(a_form, a_form),
        )
        left_action = np.stack([u[:d, :d] for u in doubled.basis])
        left_inner = np.zeros((d, d, 2 * d, 2 * d), dtype=complex)
        left_inner[:, :, :d, :d] = m.left_inner
        sub = TensorCorrespondence(
            algebra=m.algebra,
            dim=d,
            action=m.action,
            inner=m.inner,
            symmetry=m.symmetry,
            left_algebra=doubled,
            left_action=left_action,
            left_inner=left_inner,
        )
        report = morita_krein_check(sub, samples=100, seed=24)
        failed = {r.name for r in report.failures()}
        assert "left products full" in failed
        assert "linking identity" not in failed


class TestSpinorFactorization:
    def test_signature_11(self):
        report = spinor_factorization_check(PseudoEuclideanSpace(1, 1), seed=25)
        assert report.passed, report.to_text()

    def test_signature_22(self):
        report = spinor_factorization_check(PseudoEuclideanSpace(2, 2), seed=26)
        assert report.passed, report.to_text()

    def test_dimension_identity(self):
        report = spinor_factorization_check(PseudoEuclideanSpace(1, 1), seed=27)
        rec = {r.name: r for r in report.records}
        assert rec["dimension product matches exterior algebra"].max_violation == 0.0


class TestDegenerateDescent:
    def test_degenerate_inner_reported(self):
        # a correspondence with a rank-deficient plain inner product leads
        # to a degenerate descent when tensored against the identity
        m = krein_space_correspondence(1, 1)
        bad_inner = m.inner.copy()
        bad_inner[1, 1] = 0.0  # kill one diagonal entry: degenerate pairing
        bad = TensorCorrespondence(
            algebra=m.algebra,
            dim=m.dim,
            action=m.action,
            inner=bad_inner,
            symmetry=np.eye(2, dtype=complex),
            left_algebra=m.left_algebra,
            left_action=m.left_action,
            left_inner=None,
        )
        ident = identity_correspondence(m.algebra)
        with pytest.raises(DegenerateDescentError):
            internal_tensor(bad, ident)
