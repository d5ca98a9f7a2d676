"""Grassmann and Clifford algebras over pseudo-Euclidean spaces.

Multivectors over R^{p,q} are stored as dense coefficient vectors of length
2^n indexed by subset bitmasks: bit i set means the generator e_i occurs,
and basis monomials are read in increasing index order.  The Clifford
algebra acts on the same space by creation plus metric contraction, which
realizes it as a concrete operator algebra and fixes the linear bijection
between the two products.

Gamma matrices (the irreducible representation for even n) are built by the
standard 2x2 tensor recursion; the spinor space carries the indefinite form
psi† A phi with A the normalized product of the positive-square gammas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import KreinCStarAlgebra
from .krein_over_krein import KreinBimodule
from .linalg import (
    DimensionMismatchError,
    ValidationError,
    eig_signature,
    random_complex,
)


@dataclass(frozen=True)
class PseudoEuclideanSpace:
    """R^{p,q}: p directions of square +1 followed by q of square -1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValidationError("signature counts must be non-negative")

    @property
    def n(self) -> int:
        return self.p + self.q

    @cached_property
    def signs(self) -> np.ndarray:
        return np.concatenate([np.ones(self.p), -np.ones(self.q)])

    @property
    def metric(self) -> np.ndarray:
        return np.diag(self.signs).astype(complex)

    @property
    def grassmann_dim(self) -> int:
        return 1 << self.n


def _bits_below(mask: int, i: int) -> int:
    return bin(mask & ((1 << i) - 1)).count("1")


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class MultiVector:
    """An element of the complexified exterior algebra of the space."""

    space: PseudoEuclideanSpace
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.space.grassmann_dim,):
            raise DimensionMismatchError(
                f"coefficient vector must have length {self.space.grassmann_dim}"
            )
        object.__setattr__(self, "coeffs", c)

    def __add__(self, other: "MultiVector") -> "MultiVector":
        _same_space(self, other)
        return MultiVector(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        _same_space(self, other)
        return MultiVector(self.space, self.coeffs - other.coeffs)

    def __rmul__(self, z: complex) -> "MultiVector":
        return MultiVector(self.space, z * self.coeffs)

    def __neg__(self) -> "MultiVector":
        return MultiVector(self.space, -self.coeffs)

    def grade(self, k: int) -> "MultiVector":
        """The degree-k homogeneous component."""
        out = np.zeros_like(self.coeffs)
        for mask in range(self.space.grassmann_dim):
            if _popcount(mask) == k:
                out[mask] = self.coeffs[mask]
        return MultiVector(self.space, out)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def _same_space(a: MultiVector, b: MultiVector):
    if a.space != b.space:
        raise DimensionMismatchError("multivectors live over different spaces")


def scalar_one(space: PseudoEuclideanSpace) -> MultiVector:
    c = np.zeros(space.grassmann_dim, dtype=complex)
    c[0] = 1.0
    return MultiVector(space, c)


def basis_blade(space: PseudoEuclideanSpace, mask: int) -> MultiVector:
    c = np.zeros(space.grassmann_dim, dtype=complex)
    c[mask] = 1.0
    return MultiVector(space, c)


def generator(space: PseudoEuclideanSpace, i: int) -> MultiVector:
    if not 0 <= i < space.n:
        raise ValidationError(f"generator index {i} out of range")
    return basis_blade(space, 1 << i)


def vector(space: PseudoEuclideanSpace, components) -> MultiVector:
    components = np.asarray(components, dtype=complex)
    if components.shape != (space.n,):
        raise DimensionMismatchError("vector needs one component per generator")
    c = np.zeros(space.grassmann_dim, dtype=complex)
    for i in range(space.n):
        c[1 << i] = components[i]
    return MultiVector(space, c)


def random_multivector(
    space: PseudoEuclideanSpace, rng: np.random.Generator
) -> MultiVector:
    return MultiVector(space, random_complex(rng, space.grassmann_dim))


# -- Grassmann structure --------------------------------------------------------


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    """Exterior product; on monomials e_S ∧ e_T = shuffle_sign · e_{S∪T}."""
    _same_space(a, b)
    n = a.space.grassmann_dim
    out = np.zeros(n, dtype=complex)
    nz_a = np.flatnonzero(a.coeffs)
    nz_b = np.flatnonzero(b.coeffs)
    for s in nz_a:
        ca = a.coeffs[s]
        for t in nz_b:
            if s & t:
                continue
            out[s | t] += _shuffle_sign(int(s), int(t)) * ca * b.coeffs[t]
    return MultiVector(a.space, out)


def _shuffle_sign(s: int, t: int) -> int:
    """Parity of moving the generators of t past those of s above them."""
    sign = 1
    for i in range(t.bit_length()):
        if t & (1 << i):
            if _popcount(s >> (i + 1)) % 2:
                sign = -sign
    return sign


def grassmann_inner(a: MultiVector, b: MultiVector) -> complex:
    """Sesquilinear pairing ⟨e_S, e_T⟩ = δ_ST · Π_{i∈S} g_ii.

    Equals the metric Gram determinant on decomposables of equal degree;
    distinct degrees (and distinct monomials) pair to zero.
    """
    _same_space(a, b)
    return complex(np.sum(a.coeffs.conj() * b.coeffs * _gram_diagonal(a.space)))


def _gram_diagonal(space: PseudoEuclideanSpace) -> np.ndarray:
    out = np.ones(space.grassmann_dim)
    for mask in range(space.grassmann_dim):
        prod = 1.0
        for i in range(space.n):
            if mask & (1 << i):
                prod *= space.signs[i]
        out[mask] = prod
    return out


def second_quantized_J(space: PseudoEuclideanSpace) -> np.ndarray:
    """The lift of diag(signs) to the exterior algebra: e_S picks up one
    minus sign per negative-square generator it contains."""
    diag = np.ones(space.grassmann_dim)
    for mask in range(space.grassmann_dim):
        count = sum(
            1 for i in range(space.p, space.n) if mask & (1 << i)
        )
        diag[mask] = (-1.0) ** count
    return np.diag(diag).astype(complex)


def apply_second_quantized_J(a: MultiVector) -> MultiVector:
    return MultiVector(a.space, second_quantized_J(a.space) @ a.coeffs)


# -- Clifford structure ---------------------------------------------------------


def creation_matrix(space: PseudoEuclideanSpace, i: int) -> np.ndarray:
    n = space.grassmann_dim
    out = np.zeros((n, n), dtype=complex)
    bit = 1 << i
    for mask in range(n):
        if mask & bit:
            continue
        out[mask | bit, mask] = (-1.0) ** _bits_below(mask, i)
    return out


def annihilation_matrix(space: PseudoEuclideanSpace, i: int) -> np.ndarray:
    """Interior product by the i-th generator (metric factored out)."""
    return creation_matrix(space, i).T


def clifford_generator_matrix(space: PseudoEuclideanSpace, i: int) -> np.ndarray:
    """c(e_i) = creation + g_ii · contraction, acting on multivectors."""
    return creation_matrix(space, i) + space.signs[i] * annihilation_matrix(space, i)


def _blade_matrices(space: PseudoEuclideanSpace) -> np.ndarray:
    """c(e_S) for every monomial, multiplied in increasing index order."""
    n = space.grassmann_dim
    gens = [clifford_generator_matrix(space, i) for i in range(space.n)]
    out = np.zeros((n, n, n), dtype=complex)
    out[0] = np.eye(n)
    for mask in range(1, n):
        low = (mask & -mask).bit_length() - 1
        out[mask] = gens[low] @ out[mask ^ (1 << low)]
    return out


def clifford_action(space: PseudoEuclideanSpace, a: MultiVector) -> np.ndarray:
    """The operator c(a) on the exterior algebra, extended multiplicatively
    from the generators."""
    if a.space != space:
        raise DimensionMismatchError("multivector over a different space")
    return np.tensordot(a.coeffs, _blade_matrices(space), axes=(0, 0))


def clifford_product(a: MultiVector, b: MultiVector) -> MultiVector:
    """The Clifford product, computed as c(a) applied to b.

    Evaluating at b = 1 inverts the linear bijection Cl ≃ Λ, so this is the
    algebra product transported to exterior coordinates.
    """
    _same_space(a, b)
    return MultiVector(a.space, clifford_action(a.space, a) @ b.coeffs)


def reversal(a: MultiVector) -> MultiVector:
    """Reverse each monomial factor order: sign (-1)^{k(k-1)/2} on degree k."""
    out = a.coeffs.copy()
    for mask in range(a.space.grassmann_dim):
        k = _popcount(mask)
        out[mask] *= (-1.0) ** (k * (k - 1) // 2)
    return MultiVector(a.space, out)


def conjugate_reversal_coeffs(a: MultiVector) -> MultiVector:
    """Reversal with conjugated coefficients: the candidate involution."""
    return MultiVector(a.space, reversal(a).coeffs.conj())


def clifford_krein_algebra(space: PseudoEuclideanSpace) -> KreinCStarAlgebra:
    """The Clifford algebra as operators on the exterior algebra, with the
    second-quantized symmetry as the reference involution.

    The resulting star is the adjoint for the indefinite Gram pairing; it
    coincides with conjugate-reversal of Clifford monomials (verified by the
    test suite, not postulated here).
    """
    return KreinCStarAlgebra(
        _blade_matrices(space),
        second_quantized_J(space),
        label=f"CCl(R^{{{space.p},{space.q}}})",
    )


# -- gamma matrices and spinors --------------------------------------------------

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _euclidean_gammas(n: int) -> list[np.ndarray]:
    """Hermitian matrices with Γ_iΓ_j + Γ_jΓ_i = 2δ_ij, size 2^(n/2)."""
    if n == 0:
        return []
    gammas = [_SIGMA_X, _SIGMA_Y]
    while len(gammas) < n:
        size = gammas[0].shape[0]
        eye = np.eye(size)
        gammas = [np.kron(g, _SIGMA_Z) for g in gammas]
        gammas.append(np.kron(eye, _SIGMA_X))
        gammas.append(np.kron(eye, _SIGMA_Y))
    return gammas[:n]


@dataclass(frozen=True)
class GammaRep:
    """Irreducible Clifford representation for an even-dimensional space."""

    space: PseudoEuclideanSpace
    gammas: tuple = field(repr=False)
    a: np.ndarray = field(repr=False)

    @property
    def spinor_dim(self) -> int:
        return self.a.shape[0]

    def gamma_blade(self, mask: int) -> np.ndarray:
        """Product of gammas over a subset, increasing index order."""
        out = np.eye(self.spinor_dim, dtype=complex)
        for i in range(self.space.n):
            if mask & (1 << i):
                out = out @ self.gammas[i]
        return out

    def spinor_form(self, psi, phi) -> complex:
        """The indefinite spinor pairing psi† A phi."""
        return complex(np.asarray(psi).conj() @ self.a @ np.asarray(phi))


def gamma_rep(space: PseudoEuclideanSpace) -> GammaRep:
    if space.n % 2 != 0:
        raise ValidationError("gamma representation needs even total dimension")
    base = _euclidean_gammas(space.n)
    gammas = []
    for i in range(space.n):
        gammas.append(base[i] if space.signs[i] > 0 else 1j * base[i])
    dim = 1 << (space.n // 2) if space.n else 1
    a = np.eye(dim, dtype=complex)
    for i in range(space.p):
        a = a @ gammas[i]
    # normalize the phase so A is hermitian with A² = 1
    z = 1.0 if (space.p * (space.p - 1) // 2) % 2 == 0 else 1j
    a = z * a
    # fix the residual overall sign deterministically: first nonzero entry
    # of the flattened matrix is made positive real
    flat = a.ravel()
    lead = flat[np.flatnonzero(np.abs(flat) > 1e-12)[0]]
    if lead.real < 0 or (lead.real == 0 and lead.imag < 0):
        a = -a
    return GammaRep(space, tuple(gammas), a)


def spinor_signature(space: PseudoEuclideanSpace) -> tuple[int, int]:
    """Eigenvalue signature of the spinor form matrix A."""
    return eig_signature(gamma_rep(space).a)


def gamma_algebra(rep: GammaRep) -> KreinCStarAlgebra:
    """The full gamma-blade span as a Kreĭn algebra with reference form A."""
    basis = np.stack([rep.gamma_blade(m) for m in range(rep.space.grassmann_dim)])
    s = rep.space
    return KreinCStarAlgebra(basis, rep.a, label=f"Cl(R^{{{s.p},{s.q}}}) on spinors")


def _scalar_krein_algebra() -> KreinCStarAlgebra:
    return KreinCStarAlgebra(
        np.ones((1, 1, 1), dtype=complex), np.eye(1, dtype=complex), label="C"
    )


def spinor_module(space: PseudoEuclideanSpace) -> KreinBimodule:
    """Spinors as a Clifford-C bimodule.

    Right action of the scalars, indefinite scalar product psi† A phi,
    symmetry J = A, left gamma action, left Clifford-valued product
    psi phi† A.  The twisting J(c psi) = alpha(c) J(psi) holds with alpha
    the conjugation by A on the gamma image.
    """
    rep = gamma_rep(space)
    d = rep.spinor_dim
    left = gamma_algebra(rep)
    right = _scalar_krein_algebra()
    inner = rep.a[:, :, None, None].copy()
    left_inner = np.zeros((d, d, d, d), dtype=complex)
    eye = np.eye(d, dtype=complex)
    for i in range(d):
        for j in range(d):
            left_inner[i, j] = np.outer(eye[i], eye[j].conj()) @ rep.a
    left_action = np.stack(
        [rep.gamma_blade(m) for m in range(space.grassmann_dim)]
    )
    return KreinBimodule(
        algebra=right,
        dim=d,
        action=eye[None, :, :].copy(),
        inner=inner,
        symmetry=rep.a.copy(),
        left_algebra=left,
        left_action=left_action,
        left_inner=left_inner,
    )
