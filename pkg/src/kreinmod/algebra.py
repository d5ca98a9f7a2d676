"""Finite-dimensional C*-algebras and their indefinite (Kreĭn) variants.

A finite C*-algebra is realized as a direct sum of full matrix blocks,
i.e. block-diagonal complex matrices.  The Kreĭn variant is always
concretely represented on a reference space C^d carrying a hermitian
involution ``eta`` (the symmetry of the reference indefinite product):
the twisted involution is ``star(a) = eta a† eta`` and the fundamental
symmetry automorphism is ``alpha(a) = eta a eta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .linalg import (
    DimensionMismatchError,
    ValidationError,
    as_complex_matrix,
    hermitian_adjoint,
    operator_norm,
    random_complex,
)
from .report import Report


@dataclass(frozen=True)
class FiniteCStarAlgebra:
    """Direct sum of full matrix algebras, as block-diagonal matrices.

    ``blocks`` lists the block sizes; all size-1 blocks give the
    commutative algebra of functions on a finite set.
    """

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks or any(k < 1 for k in self.blocks):
            raise ValidationError("block sizes must be positive")
        object.__setattr__(self, "blocks", tuple(int(k) for k in self.blocks))

    @property
    def dim(self) -> int:
        """Dimension of the reference space the algebra acts on."""
        return sum(self.blocks)

    @property
    def vector_dim(self) -> int:
        """Linear dimension of the algebra itself."""
        return sum(k * k for k in self.blocks)

    @cached_property
    def mask(self) -> np.ndarray:
        d = self.dim
        m = np.zeros((d, d), dtype=bool)
        off = 0
        for k in self.blocks:
            m[off : off + k, off : off + k] = True
            off += k
        return m

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def project(self, m) -> np.ndarray:
        """Zero out the off-block entries."""
        a = as_complex_matrix(m)
        if a.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"expected shape {(self.dim, self.dim)}, got {a.shape}"
            )
        return np.where(self.mask, a, 0.0)

    def contains(self, m, tol: float = 1e-10) -> bool:
        a = as_complex_matrix(m)
        if a.shape != (self.dim, self.dim):
            return False
        scale = max(operator_norm(a), 1.0)
        return operator_norm(self.project(a) - a) <= tol * scale

    def basis(self) -> np.ndarray:
        """Matrix units of every block, stacked as a (vector_dim, d, d) array."""
        out = np.zeros((self.vector_dim, self.dim, self.dim), dtype=complex)
        idx = 0
        off = 0
        for k in self.blocks:
            for i in range(k):
                for j in range(k):
                    out[idx, off + i, off + j] = 1.0
                    idx += 1
            off += k
        return out

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        """I.i.d. complex normal entries, restricted to the blocks."""
        return self.project(random_complex(rng, self.dim, self.dim))

    def random_hermitian(self, rng: np.random.Generator) -> np.ndarray:
        a = self.random_element(rng)
        return (a + a.conj().T) / 2

    def star(self, a) -> np.ndarray:
        return hermitian_adjoint(a)


def scalars() -> FiniteCStarAlgebra:
    """The base field C as a one-block algebra."""
    return FiniteCStarAlgebra((1,))


def functions_on_points(n_points: int) -> FiniteCStarAlgebra:
    """Commutative algebra of functions on a finite set (diagonal matrices)."""
    return FiniteCStarAlgebra((1,) * n_points)


class KreinCStarAlgebra:
    """A concrete *-closed operator algebra on a reference Kreĭn space C^d.

    ``basis`` spans the carrier subalgebra of d x d matrices; ``eta`` is the
    hermitian involution of the reference space.  The twisted involution is
    ``star(a) = eta a† eta`` and ``alpha(a) = eta a eta``.
    """

    def __init__(self, basis, eta, *, label: str = "", validate: bool = True):
        basis = np.asarray(basis, dtype=complex)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise ValidationError("basis must be a stack of square matrices")
        self.basis = basis
        self.eta = as_complex_matrix(eta)
        self.dim = basis.shape[1]
        self.label = label
        if self.eta.shape != (self.dim, self.dim):
            raise DimensionMismatchError("eta shape does not match basis")
        # orthonormal spanning set (rows) for fast projection onto the carrier
        flat = basis.reshape(basis.shape[0], -1)
        u, s, vh = np.linalg.svd(flat, full_matrices=False)
        rank = int(np.sum(s > 1e-12 * s[0])) if s.size and s[0] > 0 else 0
        self._onb = vh[:rank]  # (r, d*d)
        self._pinv = np.linalg.pinv(flat)
        if validate:
            self._validate()

    @property
    def vector_dim(self) -> int:
        return self._onb.shape[0]

    def _validate(self):
        d = self.dim
        eye = np.eye(d)
        if operator_norm(self.eta - self.eta.conj().T) > 1e-10:
            raise ValidationError("eta is not hermitian")
        if operator_norm(self.eta @ self.eta - eye) > 1e-10:
            raise ValidationError("eta squared is not the identity")
        if not self.contains(eye):
            raise ValidationError("carrier does not contain the identity")
        for b in self.basis:
            if not self.contains(self.alpha(b)):
                raise ValidationError("carrier is not closed under alpha")
            if not self.contains(self.star(b)):
                raise ValidationError("carrier is not closed under star")
        # product closure, spot-checked on a deterministic sample
        rng = np.random.default_rng(0)
        for _ in range(min(8, len(self.basis) ** 2)):
            a = self.random_element(rng)
            b = self.random_element(rng)
            if not self.contains(a @ b):
                raise ValidationError("carrier is not closed under products")

    # -- carrier membership ------------------------------------------------

    def project(self, m) -> np.ndarray:
        a = as_complex_matrix(m)
        if a.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"expected shape {(self.dim, self.dim)}, got {a.shape}"
            )
        v = a.ravel()
        return (self._onb.conj().T @ (self._onb @ v)).reshape(self.dim, self.dim)

    def contains(self, m, tol: float = 1e-9) -> bool:
        a = as_complex_matrix(m)
        if a.shape != (self.dim, self.dim):
            return False
        scale = max(operator_norm(a), 1.0)
        return operator_norm(self.project(a) - a) <= tol * scale

    def coefficients(self, a) -> np.ndarray:
        """Coordinates of a carrier element in the stored basis."""
        return self._pinv.T @ np.asarray(a, dtype=complex).ravel()

    def from_coefficients(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=complex)
        return np.tensordot(c, self.basis, axes=(0, 0))

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        """I.i.d. complex normal matrix, projected into the carrier."""
        return self.project(random_complex(rng, self.dim, self.dim))

    # -- Kreĭn structure ----------------------------------------------------

    def star(self, a) -> np.ndarray:
        """The involution twisted by the reference symmetry: eta a† eta."""
        return self.eta @ hermitian_adjoint(a) @ self.eta

    def alpha(self, a) -> np.ndarray:
        """The fundamental symmetry automorphism: eta a eta."""
        a = as_complex_matrix(a)
        if a.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"expected shape {(self.dim, self.dim)}, got {a.shape}"
            )
        return self.eta @ a @ self.eta

    def dagger(self, a) -> np.ndarray:
        """alpha(star(a)): the involution of the associated C*-algebra."""
        return hermitian_adjoint(a)

    def norm(self, a) -> float:
        """The C*-norm attached to alpha (operator norm on the hilbertified
        reference space, which is the standard one since eta² = 1)."""
        return operator_norm(a)

    @property
    def is_trivially_definite(self) -> bool:
        """True when eta = identity, i.e. the algebra is a plain C*-algebra."""
        return bool(np.allclose(self.eta, np.eye(self.dim), atol=1e-12))


def bounded_operators(p: int, q: int) -> KreinCStarAlgebra:
    """All operators on the reference space C^{p,q} with eta = diag(+1^p, -1^q)."""
    d = p + q
    if d < 1:
        raise ValidationError("p + q must be at least 1")
    eta = np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)
    basis = FiniteCStarAlgebra((d,)).basis()
    return KreinCStarAlgebra(basis, eta, label=f"B(C^{{{p},{q}}})")


def from_blocks(blocks, eta) -> KreinCStarAlgebra:
    """Kreĭn structure on a block-diagonal C*-algebra; eta must preserve it."""
    alg = FiniteCStarAlgebra(tuple(blocks))
    return KreinCStarAlgebra(alg.basis(), eta)


# -- operations ---------------------------------------------------------------


def krein_involution(algebra: KreinCStarAlgebra, a) -> np.ndarray:
    """star(a) = eta a† eta, the adjoint for the indefinite reference form."""
    return algebra.star(a)


def fundamental_symmetry(algebra: KreinCStarAlgebra, a) -> np.ndarray:
    """alpha(a) = eta a eta."""
    return algebra.alpha(a)


def cstar_norm(algebra: KreinCStarAlgebra, a) -> float:
    return algebra.norm(a)


def even_odd_split(algebra: KreinCStarAlgebra, a) -> tuple[np.ndarray, np.ndarray]:
    """Split into the +1 and -1 eigencomponents of alpha."""
    a = as_complex_matrix(a)
    aa = algebra.alpha(a)
    return (a + aa) / 2, (a - aa) / 2


def check_krein_cstar_axioms(
    algebra: KreinCStarAlgebra,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
) -> Report:
    """Randomized verification of the twisted-involution algebra axioms.

    Draws ``samples`` random carrier elements and records the worst relative
    violation of each law.  Violations are reported, never raised.
    """
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    report = Report(
        title=f"Kreĭn algebra axioms: {algebra.label or 'carrier'}",
        seed=seed,
        samples=samples,
        environment={"dim": algebra.dim, "carrier_dim": algebra.vector_dim},
    )

    eye = algebra.identity()
    eta_herm = operator_norm(algebra.eta - algebra.eta.conj().T)
    eta_invol = operator_norm(algebra.eta @ algebra.eta - eye)
    report.check("eta hermitian", eta_herm, 1e-10)
    report.check("eta involutive", eta_invol, 1e-10)

    worst = {
        "star involutive": 0.0,
        "star antimultiplicative": 0.0,
        "star conjugate-linear": 0.0,
        "alpha involutive": 0.0,
        "alpha multiplicative": 0.0,
        "alpha star-compatible": 0.0,
        "alpha(star(a)) is plain adjoint": 0.0,
        "carrier closed under alpha and star": 0.0,
        "cstar identity": 0.0,
        "norm submultiplicative": 0.0,
        "even part alpha-fixed": 0.0,
        "odd times odd is even": 0.0,
    }

    for _ in range(samples):
        a = algebra.random_element(rng)
        b = algebra.random_element(rng)
        z = complex(*rng.standard_normal(2))
        na = max(operator_norm(a), 1e-30)
        nb = max(operator_norm(b), 1e-30)

        sa = algebra.star(a)
        worst["star involutive"] = max(
            worst["star involutive"], operator_norm(algebra.star(sa) - a) / na
        )
        worst["star antimultiplicative"] = max(
            worst["star antimultiplicative"],
            operator_norm(algebra.star(a @ b) - algebra.star(b) @ sa) / (na * nb),
        )
        worst["star conjugate-linear"] = max(
            worst["star conjugate-linear"],
            operator_norm(algebra.star(z * a + b) - (np.conj(z) * sa + algebra.star(b)))
            / (abs(z) * na + nb),
        )
        aa = algebra.alpha(a)
        worst["alpha involutive"] = max(
            worst["alpha involutive"], operator_norm(algebra.alpha(aa) - a) / na
        )
        worst["alpha multiplicative"] = max(
            worst["alpha multiplicative"],
            operator_norm(algebra.alpha(a @ b) - aa @ algebra.alpha(b)) / (na * nb),
        )
        worst["alpha star-compatible"] = max(
            worst["alpha star-compatible"],
            operator_norm(algebra.alpha(sa) - algebra.star(aa)) / na,
        )
        worst["alpha(star(a)) is plain adjoint"] = max(
            worst["alpha(star(a)) is plain adjoint"],
            operator_norm(algebra.alpha(sa) - hermitian_adjoint(a)) / na,
        )
        closure = max(
            operator_norm(algebra.project(aa) - aa),
            operator_norm(algebra.project(sa) - sa),
        )
        worst["carrier closed under alpha and star"] = max(
            worst["carrier closed under alpha and star"], closure / na
        )
        # the C*-identity for the twisted involution
        lhs = algebra.norm(algebra.alpha(sa) @ a)
        worst["cstar identity"] = max(
            worst["cstar identity"], abs(lhs - na * na) / (na * na)
        )
        worst["norm submultiplicative"] = max(
            worst["norm submultiplicative"],
            max(0.0, algebra.norm(a @ b) - na * nb) / (na * nb),
        )
        even, odd = even_odd_split(algebra, a)
        worst["even part alpha-fixed"] = max(
            worst["even part alpha-fixed"],
            operator_norm(algebra.alpha(even) - even) / na,
            operator_norm(algebra.alpha(odd) + odd) / na,
            operator_norm(even + odd - a) / na,
        )
        odd_b = even_odd_split(algebra, b)[1]
        worst["odd times odd is even"] = max(
            worst["odd times odd is even"],
            # odd·odd lands in the even part, even·odd in the odd part
            operator_norm(even_odd_split(algebra, odd @ odd_b)[1]) / (na * nb),
            operator_norm(even_odd_split(algebra, even @ odd_b)[0]) / (na * nb),
        )

    grading_tol = 1e-10
    for name, value in worst.items():
        if name in (
            "star involutive",
            "alpha involutive",
            "alpha star-compatible",
            "even part alpha-fixed",
            "odd times odd is even",
            "carrier closed under alpha and star",
        ):
            report.check(name, value, grading_tol)
        else:
            report.check(name, value, tol)
    return report
