"""Modules whose coefficient algebra is itself a Kreĭn C*-algebra.

The carrier is a plain complex vector space C^D.  The right action and the
algebra-valued inner product are stored as dense tensors contracted against
the coefficient expansion of algebra elements:

    action[i]        D x D matrix, the right action of the i-th basis element
    inner[i, j]      d x d algebra element, the pairing of carrier basis
                     vectors e_i and e_j

The module symmetry J is a D x D involution twisted over the algebra's
fundamental automorphism: J(x b) = J(x) alpha(b).  Unlike the definite
situation, J is in general not adjointable for the algebra-valued product;
``krein_adjoint_over_krein`` detects this and raises NonAdjointableError.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import KreinCStarAlgebra
from .linalg import (
    DimensionMismatchError,
    ValidationError,
    is_psd,
    numerical_rank,
    operator_norm,
    random_complex,
)
from .report import Report


class NonAdjointableError(ValueError):
    """No operator satisfies the adjoint relation within tolerance."""


@dataclass(frozen=True)
class KreinModuleOverKrein:
    """A right module over a Kreĭn C*-algebra with a twisted symmetry."""

    algebra: KreinCStarAlgebra
    dim: int
    action: np.ndarray = field(repr=False)
    inner: np.ndarray = field(repr=False)
    symmetry: np.ndarray = field(repr=False)

    def __post_init__(self):
        nb = self.algebra.basis.shape[0]
        d = self.algebra.dim
        action = np.asarray(self.action, dtype=complex)
        inner = np.asarray(self.inner, dtype=complex)
        symmetry = np.asarray(self.symmetry, dtype=complex)
        if action.shape != (nb, self.dim, self.dim):
            raise DimensionMismatchError("action tensor shape mismatch")
        if inner.shape != (self.dim, self.dim, d, d):
            raise DimensionMismatchError("inner tensor shape mismatch")
        if symmetry.shape != (self.dim, self.dim):
            raise DimensionMismatchError("symmetry shape mismatch")
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "symmetry", symmetry)

    def act(self, x, b) -> np.ndarray:
        """The right action x · b."""
        c = self.algebra.coefficients(b)
        return np.tensordot(c, self.action, axes=(0, 0)) @ np.asarray(x, dtype=complex)

    def pairing(self, x, y) -> np.ndarray:
        """The algebra-valued inner product."""
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return np.einsum("i,j,ijab->ab", x.conj(), y, self.inner)

    def j(self, x) -> np.ndarray:
        return self.symmetry @ np.asarray(x, dtype=complex)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        return random_complex(rng, self.dim)

    def is_nondegenerate(self, tol: float = 1e-8) -> bool:
        flat = self.inner.reshape(self.dim, -1)
        return numerical_rank(flat, tol) == self.dim


@dataclass(frozen=True)
class KreinBimodule(KreinModuleOverKrein):
    """Adds a left Kreĭn algebra action, and optionally a left-algebra-valued
    product (present on candidate equivalence bimodules only).

    The symmetry twists over both sides: J(a x b) = alpha(a) J(x) beta(b).
    """

    left_algebra: KreinCStarAlgebra = None
    left_action: np.ndarray = field(default=None, repr=False)
    left_inner: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        super().__post_init__()
        if self.left_algebra is None:
            raise ValidationError("left algebra is required")
        na = self.left_algebra.basis.shape[0]
        dl = self.left_algebra.dim
        la = np.asarray(self.left_action, dtype=complex)
        if la.shape != (na, self.dim, self.dim):
            raise DimensionMismatchError("left action tensor shape mismatch")
        object.__setattr__(self, "left_action", la)
        if self.left_inner is not None:
            li = np.asarray(self.left_inner, dtype=complex)
            if li.shape != (self.dim, self.dim, dl, dl):
                raise DimensionMismatchError("left inner tensor shape mismatch")
            object.__setattr__(self, "left_inner", li)

    def act_left(self, a, x) -> np.ndarray:
        c = self.left_algebra.coefficients(a)
        return np.tensordot(c, self.left_action, axes=(0, 0)) @ np.asarray(
            x, dtype=complex
        )

    def pairing_left(self, x, y) -> np.ndarray:
        """The left-algebra-valued product, linear in the first argument."""
        if self.left_inner is None:
            raise ValidationError("this bimodule carries no left inner product")
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return np.einsum("i,j,ijab->ab", x, y.conj(), self.left_inner)


def _tensor_from_map(basis_size: int, dim: int, fn) -> np.ndarray:
    """Stack fn(k) columns into a (dim, basis_size)-shaped linear map."""
    out = np.zeros((dim, basis_size), dtype=complex)
    for k in range(basis_size):
        out[:, k] = fn(k)
    return out


def self_module(algebra: KreinCStarAlgebra) -> KreinBimodule:
    """The algebra over itself, in coefficient coordinates.

    Right product star(x) y, left product x star(y), symmetry alpha.
    """
    basis = algebra.basis
    nb = basis.shape[0]
    d = algebra.dim

    def mult_matrix(b, side) -> np.ndarray:
        cols = []
        for k in range(nb):
            prod = basis[k] @ b if side == "right" else b @ basis[k]
            cols.append(algebra.coefficients(prod))
        return np.stack(cols, axis=1)

    action = np.stack([mult_matrix(b, "right") for b in basis])
    left_action = np.stack([mult_matrix(b, "left") for b in basis])
    inner = np.zeros((nb, nb, d, d), dtype=complex)
    left_inner = np.zeros((nb, nb, d, d), dtype=complex)
    for i in range(nb):
        for j in range(nb):
            inner[i, j] = algebra.star(basis[i]) @ basis[j]
            left_inner[i, j] = basis[i] @ algebra.star(basis[j])
    symmetry = np.stack(
        [algebra.coefficients(algebra.alpha(b)) for b in basis], axis=1
    )
    return KreinBimodule(
        algebra=algebra,
        dim=nb,
        action=action,
        inner=inner,
        symmetry=symmetry,
        left_algebra=algebra,
        left_action=left_action,
        left_inner=left_inner,
    )


def operator_bimodule(
    k1: KreinCStarAlgebra, k2: KreinCStarAlgebra
) -> KreinBimodule:
    """Maps between two reference Kreĭn spaces as a bimodule.

    Carrier: d2 x d1 matrices T, flattened.  Right action by composition,
    right product eta1 T† eta2 S; left product T eta1 S† eta2; the symmetry
    is T ↦ eta2 T eta1.  Both algebras must have full matrix carriers.
    """
    d1, d2 = k1.dim, k2.dim
    for alg in (k1, k2):
        if alg.vector_dim != alg.dim**2:
            raise ValidationError("operator bimodule needs full matrix algebras")
    dim = d2 * d1

    def vec(t):
        return t.ravel()

    def unvec(v):
        return np.asarray(v, dtype=complex).reshape(d2, d1)

    action = np.stack(
        [
            np.stack([vec(unvec(np.eye(dim)[k]) @ b) for k in range(dim)], axis=1)
            for b in k1.basis
        ]
    )
    left_action = np.stack(
        [
            np.stack([vec(a @ unvec(np.eye(dim)[k])) for k in range(dim)], axis=1)
            for a in k2.basis
        ]
    )
    inner = np.zeros((dim, dim, d1, d1), dtype=complex)
    left_inner = np.zeros((dim, dim, d2, d2), dtype=complex)
    for i in range(dim):
        ti = unvec(np.eye(dim)[i])
        for j in range(dim):
            tj = unvec(np.eye(dim)[j])
            inner[i, j] = k1.eta @ ti.conj().T @ k2.eta @ tj
            left_inner[i, j] = ti @ k1.eta @ tj.conj().T @ k2.eta
    symmetry = np.stack(
        [vec(k2.eta @ unvec(np.eye(dim)[k]) @ k1.eta) for k in range(dim)], axis=1
    )
    return KreinBimodule(
        algebra=k1,
        dim=dim,
        action=action,
        inner=inner,
        symmetry=symmetry,
        left_algebra=k2,
        left_action=left_action,
        left_inner=left_inner,
    )


# -- operations ----------------------------------------------------------------


def auxiliary_product(module: KreinModuleOverKrein, x, y) -> np.ndarray:
    """The positive companion product ⟨x, J y⟩."""
    return module.pairing(x, module.j(y))


def alpha_J(module: KreinModuleOverKrein, t) -> np.ndarray:
    """Conjugation by the module symmetry, T ↦ J T J."""
    t = np.asarray(t, dtype=complex)
    if t.shape != (module.dim, module.dim):
        raise DimensionMismatchError("operator shape mismatch")
    return module.symmetry @ t @ module.symmetry


def rank_one(module: KreinModuleOverKrein, x, y) -> np.ndarray:
    """The operator z ↦ x · ⟨y, z⟩."""
    x = np.asarray(x, dtype=complex)
    cols = []
    for k in range(module.dim):
        cols.append(module.act(x, module.pairing(y, np.eye(module.dim)[k])))
    return np.stack(cols, axis=1)


def adjoint_residual(
    module: KreinModuleOverKrein, t
) -> tuple[np.ndarray, float]:
    """Best least-squares candidate for the adjoint of T, with the relative
    residual of the defining relation ⟨T x, y⟩ = ⟨x, S y⟩."""
    t = np.asarray(t, dtype=complex)
    d = module.algebra.dim
    n = module.dim
    if t.shape != (n, n):
        raise DimensionMismatchError("operator shape mismatch")
    # target[i, j] = <T e_i, e_j>; unknown S enters via <e_i, S e_j>
    target = np.einsum("ki,kjab->ijab", t.conj(), module.inner)
    # coefficient of S_kj in row (i, j, a, b) is inner[i, k, a, b]
    design = np.zeros((n * n * d * d, n * n), dtype=complex)
    rows = target.reshape(-1)
    idx = 0
    for i in range(n):
        for j in range(n):
            block = module.inner[i].reshape(n, d * d).T  # (d*d, n) over k
            design[idx : idx + d * d, j::n] = block
            idx += d * d
    sol, _, _, _ = np.linalg.lstsq(design, rows, rcond=None)
    residual = np.linalg.norm(design @ sol - rows)
    scale = max(np.linalg.norm(rows), 1.0)
    s = np.zeros((n, n), dtype=complex)
    for j in range(n):
        s[:, j] = sol[j::n]
    return s, residual / scale


def krein_adjoint_over_krein(
    module: KreinModuleOverKrein, t, tol: float = 1e-8
) -> np.ndarray:
    """Solve ⟨T x, y⟩ = ⟨x, S y⟩ for S, raising when no solution exists.

    The relation is linear in S; it is set up over the carrier basis and
    solved by least squares.  A residual above tol (relative to the target)
    means T has no adjoint for the indefinite algebra-valued product.
    """
    s, residual = adjoint_residual(module, t)
    if residual > tol:
        raise NonAdjointableError(
            f"no adjoint exists: relative residual {residual:.3e}"
        )
    return s


def is_adjointable(module: KreinModuleOverKrein, t, tol: float = 1e-8) -> bool:
    try:
        krein_adjoint_over_krein(module, t, tol)
    except NonAdjointableError:
        return False
    return True


def check_module_over_krein(
    module: KreinModuleOverKrein,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
) -> Report:
    """Randomized verification of the twisted-module axioms."""
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    alg = module.algebra
    is_bimodule = isinstance(module, KreinBimodule)
    report = Report(
        title="module over Kreĭn algebra",
        seed=seed,
        samples=samples,
        environment={"carrier_dim": module.dim, "algebra_dim": alg.dim},
    )

    jmat = module.symmetry
    report.check(
        "J involutive", operator_norm(jmat @ jmat - np.eye(module.dim)), 1e-10
    )
    report.check(
        "inner non-degenerate", 0.0 if module.is_nondegenerate() else 1.0, 0.5
    )

    names = [
        "action associative",
        "inner right-linear",
        "inner star-hermitian",
        "J twists over alpha",
        "alpha of inner is inner of J pair",
        "auxiliary product positive",
        "even odd parts exchange under J",
    ]
    has_left_inner = is_bimodule and module.left_inner is not None
    if is_bimodule:
        names += [
            "left action associative",
            "actions commute",
            "J twists over left alpha",
        ]
    if has_left_inner:
        names.append("left inner left-linear")
    worst = dict.fromkeys(names, 0.0)

    for _ in range(samples):
        x = module.random_element(rng)
        y = module.random_element(rng)
        a = alg.random_element(rng)
        b = alg.random_element(rng)
        nx, ny = np.linalg.norm(x), np.linalg.norm(y)
        na = max(operator_norm(a), 1e-30)
        nnb = max(operator_norm(b), 1e-30)
        sxy = max(nx * ny, 1e-30)

        worst["action associative"] = max(
            worst["action associative"],
            np.linalg.norm(module.act(module.act(x, a), b) - module.act(x, a @ b))
            / (nx * na * nnb),
        )
        worst["inner right-linear"] = max(
            worst["inner right-linear"],
            operator_norm(module.pairing(x, module.act(y, b)) - module.pairing(x, y) @ b)
            / (sxy * nnb),
        )
        p = module.pairing(x, y)
        worst["inner star-hermitian"] = max(
            worst["inner star-hermitian"],
            operator_norm(alg.star(p) - module.pairing(y, x)) / sxy,
        )
        worst["J twists over alpha"] = max(
            worst["J twists over alpha"],
            np.linalg.norm(module.j(module.act(x, b)) - module.act(module.j(x), alg.alpha(b)))
            / (nx * nnb),
        )
        pj = module.pairing(module.j(x), module.j(y))
        worst["alpha of inner is inner of J pair"] = max(
            worst["alpha of inner is inner of J pair"],
            operator_norm(alg.alpha(p) - pj) / sxy,
        )
        aux = auxiliary_product(module, x, x)
        herm_defect = operator_norm(aux - aux.conj().T)
        psd_defect = 0.0 if is_psd(aux, tol=1e-9) else 1.0
        worst["auxiliary product positive"] = max(
            worst["auxiliary product positive"],
            herm_defect / max(nx * nx, 1e-30),
            psd_defect,
        )
        even = (p + alg.alpha(p)) / 2
        odd = (p - alg.alpha(p)) / 2
        worst["even odd parts exchange under J"] = max(
            worst["even odd parts exchange under J"],
            operator_norm(pj - (even - odd)) / sxy,
        )

        if is_bimodule:
            la = module.left_algebra
            c = la.random_element(rng)
            d_el = la.random_element(rng)
            nc = max(operator_norm(c), 1e-30)
            nd = max(operator_norm(d_el), 1e-30)
            worst["left action associative"] = max(
                worst["left action associative"],
                np.linalg.norm(
                    module.act_left(c, module.act_left(d_el, x))
                    - module.act_left(c @ d_el, x)
                )
                / (nx * nc * nd),
            )
            if has_left_inner:
                worst["left inner left-linear"] = max(
                    worst["left inner left-linear"],
                    operator_norm(
                        module.pairing_left(module.act_left(c, x), y)
                        - c @ module.pairing_left(x, y)
                    )
                    / (sxy * nc),
                )
            worst["actions commute"] = max(
                worst["actions commute"],
                np.linalg.norm(
                    module.act_left(c, module.act(x, b))
                    - module.act(module.act_left(c, x), b)
                )
                / (nx * nc * nnb),
            )
            worst["J twists over left alpha"] = max(
                worst["J twists over left alpha"],
                np.linalg.norm(
                    module.j(module.act_left(c, x))
                    - module.act_left(la.alpha(c), module.j(x))
                )
                / (nx * nc),
            )

    for name in names:
        report.check(name, worst[name], tol)
    return report


def check_imprimitivity(
    module: KreinBimodule, samples: int = 100, seed: int = 0, tol: float = 1e-9
) -> Report:
    """Randomized check of the linking identity _A⟨x,y⟩ z = x ⟨y,z⟩_B."""
    rng = np.random.default_rng(seed)
    report = Report(
        title="imprimitivity",
        seed=seed,
        samples=samples,
        environment={"carrier_dim": module.dim},
    )
    worst = 0.0
    fullness_left, fullness_right = [], []
    for _ in range(samples):
        x = module.random_element(rng)
        y = module.random_element(rng)
        z = module.random_element(rng)
        scale = max(np.linalg.norm(x) * np.linalg.norm(y) * np.linalg.norm(z), 1e-30)
        lhs = module.act_left(module.pairing_left(x, y), z)
        rhs = module.act(x, module.pairing(y, z))
        worst = max(worst, np.linalg.norm(lhs - rhs) / scale)
        fullness_left.append(module.pairing_left(x, y).ravel())
        fullness_right.append(module.pairing(x, y).ravel())
    report.check("linking identity", worst, tol)
    # fullness: the products span the (projected) algebras
    rank_l = numerical_rank(np.stack(fullness_left, axis=1))
    rank_r = numerical_rank(np.stack(fullness_right, axis=1))
    report.check(
        "left products full",
        float(module.left_algebra.vector_dim - rank_l),
        0.5,
        detail=f"rank {rank_l} of {module.left_algebra.vector_dim}",
    )
    report.check(
        "right products full",
        float(module.algebra.vector_dim - rank_r),
        0.5,
        detail=f"rank {rank_r} of {module.algebra.vector_dim}",
    )
    return report
