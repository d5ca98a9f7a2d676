"""Indefinite-inner-product modules over finite-dimensional C*-algebras.

A rank-n module over a block-diagonal algebra A acting on C^k stores its
elements as (n*k, k) complex arrays: n vertically stacked algebra elements.
The A-valued inner product is ⟨x, y⟩ = x† G y with G an invertible hermitian
(n*k, n*k) matrix whose k x k blocks lie in A.  A-linear operators are
(n*k, n*k) matrices with blocks in A, acting by left multiplication.

Left modules mirror right ones through the adjoint flip x ↦ x†; the
operator-level machinery below works on the right-sided picture.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg

from .algebra import FiniteCStarAlgebra, KreinCStarAlgebra
from .linalg import (
    DimensionMismatchError,
    Subspace,
    ValidationError,
    as_complex_matrix,
    column_space,
    hermitian_adjoint,
    is_psd,
    min_hermitian_eig,
    numerical_rank,
    operator_norm,
    random_complex,
)


@dataclass(frozen=True)
class KreinModule:
    """Finite-rank module over a FiniteCStarAlgebra with an indefinite
    algebra-valued inner product."""

    base: FiniteCStarAlgebra
    rank: int
    gram: np.ndarray = field(repr=False)
    side: str = "right"

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError("rank must be positive")
        if self.side not in ("right", "left"):
            raise ValidationError("side must be 'right' or 'left'")
        g = as_complex_matrix(self.gram)
        nk = self.rank * self.base.dim
        if g.shape != (nk, nk):
            raise DimensionMismatchError(f"gram must be {nk} x {nk}")
        scale = max(operator_norm(g), 1.0)
        if operator_norm(g - g.conj().T) > 1e-10 * scale:
            raise ValidationError("gram is not hermitian")
        if not self._in_pattern(g):
            raise ValidationError("gram blocks do not lie in the base algebra")
        if numerical_rank(g) < nk:
            raise ValidationError("gram is degenerate")
        object.__setattr__(self, "gram", g)

    # -- shapes and patterns -------------------------------------------------

    @property
    def block_dim(self) -> int:
        return self.base.dim

    @property
    def flat_dim(self) -> int:
        """Side of the flat operator matrices, rank * block_dim."""
        return self.rank * self.base.dim

    @property
    def ambient_dim(self) -> int:
        """Dimension of the vectorized element space (with pattern zeros)."""
        return self.flat_dim * self.base.dim

    @cached_property
    def operator_pattern(self) -> np.ndarray:
        return np.tile(self.base.mask, (self.rank, self.rank))

    @cached_property
    def element_pattern(self) -> np.ndarray:
        return np.tile(self.base.mask, (self.rank, 1))

    def _in_pattern(self, m, tol: float = 1e-10) -> bool:
        scale = max(operator_norm(m), 1.0)
        return (
            operator_norm(np.where(self.operator_pattern, m, 0.0) - m) <= tol * scale
        )

    def project_operator(self, m) -> np.ndarray:
        """Restrict a flat matrix to the A-linear operator pattern."""
        m = as_complex_matrix(m)
        return np.where(self.operator_pattern, m, 0.0)

    def project_element(self, x) -> np.ndarray:
        x = as_complex_matrix(x)
        return np.where(self.element_pattern, x, 0.0)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        x = self.project_element(random_complex(rng, self.flat_dim, self.base.dim))
        return x if self.side == "right" else hermitian_adjoint(x)

    def random_operator(self, rng: np.random.Generator) -> np.ndarray:
        return self.project_operator(random_complex(rng, self.flat_dim, self.flat_dim))

    def basis_elements(self) -> list[np.ndarray]:
        """Linear basis of the carrier (rank copies of the algebra basis)."""
        out = []
        k = self.base.dim
        for i in range(self.rank):
            for b in self.base.basis():
                x = np.zeros((self.flat_dim, k), dtype=complex)
                x[i * k : (i + 1) * k] = b
                out.append(x if self.side == "right" else hermitian_adjoint(x))
        return out

    # -- module structure -----------------------------------------------------

    def action(self, x, a) -> np.ndarray:
        """Right action x·a (or left action a·x for left modules)."""
        a = self.base.project(a)
        return x @ a if self.side == "right" else a @ x

    def inner(self, x, y) -> np.ndarray:
        """The A-valued inner product."""
        x, y = as_complex_matrix(x), as_complex_matrix(y)
        if self.side == "right":
            if x.shape != (self.flat_dim, self.base.dim):
                raise DimensionMismatchError("element shape mismatch")
            return x.conj().T @ self.gram @ y
        return x @ self.gram @ y.conj().T

    def flip(self) -> "KreinModule":
        """The same data with the opposite side convention."""
        other = "left" if self.side == "right" else "right"
        return KreinModule(self.base, self.rank, self.gram, other)

    def vectorize(self, x) -> np.ndarray:
        x = x if self.side == "right" else hermitian_adjoint(x)
        return as_complex_matrix(x).ravel()

    def unvectorize(self, v) -> np.ndarray:
        x = np.asarray(v, dtype=complex).reshape(self.flat_dim, self.base.dim)
        return x if self.side == "right" else hermitian_adjoint(x)

    def lift_operator(self, m) -> np.ndarray:
        """The flat operator as a matrix on the vectorized element space."""
        return np.kron(as_complex_matrix(m), np.eye(self.base.dim))


def krein_space(p: int, q: int) -> KreinModule:
    """C^{p,q} as a rank-(p+q) module over the scalars."""
    from .algebra import scalars

    g = np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)
    return KreinModule(scalars(), p + q, g)


def hyperbolic_symmetry(t: float) -> np.ndarray:
    """The standard symmetry of C^{1,1} conjugated by a hyperbolic rotation."""
    w = np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]])
    return (w @ np.diag([1.0, -1.0]) @ np.linalg.inv(w)).astype(complex)


@dataclass(frozen=True)
class FundamentalSymmetry:
    """An A-linear involution splitting the module into semidefinite halves."""

    module: KreinModule
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = self.module
        j = as_complex_matrix(self.matrix)
        nk = m.flat_dim
        if j.shape != (nk, nk):
            raise DimensionMismatchError(f"symmetry must be {nk} x {nk}")
        scale = max(operator_norm(j), 1.0)
        if not m._in_pattern(j):
            raise ValidationError("symmetry blocks do not lie in the base algebra")
        if operator_norm(j @ j - np.eye(nk)) > 1e-9 * scale * scale:
            raise ValidationError("symmetry does not square to the identity")
        g = m.gram
        gs = operator_norm(g)
        if operator_norm(j.conj().T @ g - g @ j) > 1e-9 * gs * scale:
            raise ValidationError("symmetry is not self-adjoint for the inner product")
        for sign in (+1, -1):
            p = np.eye(nk) + sign * j
            form = sign * (p.conj().T @ g @ p)
            if not is_psd(form, tol=1e-9):
                raise ValidationError(
                    "a half of the decomposition is not semidefinite"
                )
        object.__setattr__(self, "matrix", j)

    def __call__(self, x) -> np.ndarray:
        if self.module.side == "right":
            return self.matrix @ x
        return x @ self.matrix.conj().T

    def projector(self, sign: int) -> np.ndarray:
        return (np.eye(self.module.flat_dim) + sign * self.matrix) / 2


def standard_symmetry(module: KreinModule) -> FundamentalSymmetry:
    """The matrix sign of the gram: the canonical splitting."""
    g = module.gram
    w, v = np.linalg.eigh((g + g.conj().T) / 2)
    j = v @ np.diag(np.sign(w)) @ v.conj().T
    return FundamentalSymmetry(module, module.project_operator(j))


def random_symmetry(
    module: KreinModule, rng: np.random.Generator, scale: float = 0.3
) -> FundamentalSymmetry:
    """Conjugate the standard symmetry by a random unitary of the indefinite
    form (the exponential of a form-skew-adjoint A-linear operator)."""
    j0 = standard_symmetry(module).matrix
    s = module.random_operator(rng)
    s = (s - s.conj().T) / 2
    s *= scale / max(operator_norm(s), 1e-30)
    x = np.linalg.solve(module.gram, s)  # skew-adjoint for the form
    x = module.project_operator(x)
    u = module.project_operator(scipy.linalg.expm(x))
    j = u @ j0 @ np.linalg.inv(u)
    return FundamentalSymmetry(module, module.project_operator(j))


# -- operations ----------------------------------------------------------------


def inner_product(module: KreinModule, x, y) -> np.ndarray:
    return module.inner(x, y)


def antimodule(module: KreinModule) -> KreinModule:
    """Same carrier and action, negated inner product."""
    return KreinModule(module.base, module.rank, -module.gram, module.side)


def fundamental_decomposition(
    module: KreinModule, symmetry: FundamentalSymmetry
) -> tuple[Subspace, Subspace]:
    """Ranges of (1 ± J)/2 inside the vectorized carrier."""
    _check_owner(module, symmetry)
    cols_p, cols_m = [], []
    for x in module.basis_elements():
        v = module.vectorize(x)
        lift = module.lift_operator(symmetry.projector(+1))
        cols_p.append(lift @ v)
        cols_m.append(module.lift_operator(symmetry.projector(-1)) @ v)
    plus = column_space(np.stack(cols_p, axis=1))
    minus = column_space(np.stack(cols_m, axis=1))
    if plus.dim + minus.dim != numerical_rank(
        np.stack([module.vectorize(x) for x in module.basis_elements()], axis=1)
    ):
        raise ValidationError("decomposition does not exhaust the carrier")
    return plus, minus


def hilbertify(module: KreinModule, symmetry: FundamentalSymmetry) -> KreinModule:
    """The positive-definite module with gram J† G."""
    _check_owner(module, symmetry)
    g = symmetry.matrix.conj().T @ module.gram
    g = (g + g.conj().T) / 2
    if min_hermitian_eig(g) <= 0:
        raise ValidationError("hilbertified gram is not positive definite")
    return KreinModule(module.base, module.rank, module.project_operator(g), module.side)


def krein_adjoint(module: KreinModule, symmetry: FundamentalSymmetry, t) -> np.ndarray:
    """Adjoint for the indefinite product: G^{-1} T† G.

    Coincides with J ∘ (hilbertified adjoint) ∘ J.
    """
    t = as_complex_matrix(t)
    if t.shape != (module.flat_dim, module.flat_dim):
        raise DimensionMismatchError("operator shape mismatch")
    adj = np.linalg.solve(module.gram, t.conj().T @ module.gram)
    return module.project_operator(adj)


def hilbert_adjoint(module: KreinModule, symmetry: FundamentalSymmetry, t) -> np.ndarray:
    """Adjoint in the hilbertified module |K|^J."""
    g = symmetry.matrix.conj().T @ module.gram
    adj = np.linalg.solve(g, as_complex_matrix(t).conj().T @ g)
    return module.project_operator(adj)


@dataclass(frozen=True)
class TransitionMaps:
    """The component exchange maps between two splittings.

    ``plus`` restricts (1+J2)/2 to the J1-positive half (and ``adj_plus`` is
    its inner-product adjoint, going the other way); similarly for ``minus``.
    Subspaces live in the vectorized carrier.
    """

    plus: np.ndarray
    minus: np.ndarray
    adj_plus: np.ndarray
    adj_minus: np.ndarray
    domain_plus: Subspace
    domain_minus: Subspace
    range_plus: Subspace
    range_minus: Subspace

    def plus_coordinate_matrix(self, module: KreinModule) -> np.ndarray:
        lift = module.lift_operator(self.plus)
        return self.range_plus.basis.conj().T @ lift @ self.domain_plus.basis

    def minus_coordinate_matrix(self, module: KreinModule) -> np.ndarray:
        lift = module.lift_operator(self.minus)
        return self.range_minus.basis.conj().T @ lift @ self.domain_minus.basis


def transition_maps(
    module: KreinModule, j1: FundamentalSymmetry, j2: FundamentalSymmetry
) -> TransitionMaps:
    _check_owner(module, j1)
    _check_owner(module, j2)
    d1p, d1m = fundamental_decomposition(module, j1)
    d2p, d2m = fundamental_decomposition(module, j2)
    return TransitionMaps(
        plus=j2.projector(+1),
        minus=j2.projector(-1),
        adj_plus=j1.projector(+1),
        adj_minus=j1.projector(-1),
        domain_plus=d1p,
        domain_minus=d1m,
        range_plus=d2p,
        range_minus=d2m,
    )


def norm_equivalence_constants(
    module: KreinModule, j1: FundamentalSymmetry, j2: FundamentalSymmetry
) -> tuple[float, float]:
    """Extreme singular values of the identity between the two hilbertified
    structures: c ‖x‖_{J1} ≤ ‖x‖_{J2} ≤ C ‖x‖_{J1}."""
    g1 = _pd_gram(module, j1)
    g2 = _pd_gram(module, j2)
    l1 = np.linalg.cholesky(g1).conj().T
    l2 = np.linalg.cholesky(g2).conj().T
    s = np.linalg.svd(l2 @ np.linalg.inv(l1), compute_uv=False)
    return float(s[-1]), float(s[0])


def _pd_gram(module: KreinModule, j: FundamentalSymmetry) -> np.ndarray:
    g = j.matrix.conj().T @ module.gram
    return (g + g.conj().T) / 2


def intertwiner(
    module: KreinModule, j1: FundamentalSymmetry, j2: FundamentalSymmetry
) -> np.ndarray:
    """A unitary (for the indefinite form) with U J1 = J2 U.

    The direct sum of the two transition maps already exchanges the
    splittings but is only approximately isometric; composing with the
    inverse square root of its hilbertified gram (the polar correction,
    performed half by half) makes it exactly unitary.
    """
    a = (np.eye(module.flat_dim) + j2.matrix @ j1.matrix) / 2
    g1 = _pd_gram(module, j1)
    g2 = _pd_gram(module, j2)
    # adjoint of a as a map (K, G1') -> (K, G2'), then the polar correction
    b = np.linalg.solve(g1, a.conj().T @ g2)
    m = b @ a  # G1'-positive, commutes with J1
    u = a @ np.linalg.inv(scipy.linalg.sqrtm(m))
    return module.project_operator(u)


def adjointable_algebra(
    module: KreinModule, symmetry: FundamentalSymmetry
) -> KreinCStarAlgebra:
    """All A-linear operators on the module, packaged with the twisted
    involution G^{-1} T† G and fundamental symmetry T ↦ J T J.

    The reference basis is rotated so the hilbertified product becomes the
    standard one; the operator norm is then the |K|^J norm.
    """
    _check_owner(module, symmetry)
    g = _pd_gram(module, symmetry)
    l = np.linalg.cholesky(g).conj().T  # g = l† l
    linv = np.linalg.inv(l)
    k = module.base.dim
    basis = []
    for i in range(module.rank):
        for jdx in range(module.rank):
            for b in module.base.basis():
                m = np.zeros((module.flat_dim, module.flat_dim), dtype=complex)
                m[i * k : (i + 1) * k, jdx * k : (jdx + 1) * k] = b
                basis.append(l @ m @ linv)
    eta = l @ symmetry.matrix @ linv
    eta = (eta + eta.conj().T) / 2
    return KreinCStarAlgebra(
        np.stack(basis), eta, label=f"B(module rank {module.rank})"
    )


def _check_owner(module: KreinModule, symmetry: FundamentalSymmetry):
    if symmetry.module is not module and not (
        symmetry.module.rank == module.rank
        and symmetry.module.base == module.base
        and np.array_equal(symmetry.module.gram, module.gram)
    ):
        raise ValidationError("symmetry belongs to a different module")
