"""Correspondences between Kreĭn C*-algebras and their internal tensor
products.

A correspondence from A to B is a bimodule carrier with a B-valued inner
product and a symmetry twisting over both fundamental automorphisms:
J(a x b) = alpha(a) J(x) beta(b).  The tensor product over B is realized
constructively: quotient the plain tensor by the balancing relations
x·b ⊗ y − x ⊗ b·y, then push every structure map through an explicit
orthonormal section of the quotient.  Well-definedness of each descended
map is verified numerically rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import KreinCStarAlgebra
from .clifford import (
    PseudoEuclideanSpace,
    clifford_krein_algebra,
    gamma_rep,
    spinor_module,
)
from .krein_over_krein import (
    KreinBimodule,
    check_imprimitivity,
    check_module_over_krein,
    is_adjointable,
    self_module,
)
from .linalg import (
    RANK_TOL,
    DimensionMismatchError,
    Subspace,
    ValidationError,
    column_space,
    numerical_rank,
    operator_norm,
    quotient_space,
    random_complex,
)
from .report import Report


class ResourceBudgetError(RuntimeError):
    """The balancing-relation enumeration would exceed the work budget."""


class DegenerateDescentError(ValueError):
    """The inner product degenerates on the quotient carrier."""


@dataclass(frozen=True)
class Correspondence(KreinBimodule):
    """A Kreĭn bimodule viewed as an arrow left_algebra -> algebra."""


@dataclass(frozen=True)
class TensorCorrespondence(Correspondence):
    """An internal tensor product, remembering its quotient presentation."""

    projector: np.ndarray = field(default=None, repr=False)
    section: np.ndarray = field(default=None, repr=False)
    factor_dims: tuple = None

    def elementary(self, x, y) -> np.ndarray:
        """Quotient coordinates of the elementary tensor x ⊗ y."""
        return self.projector @ np.kron(
            np.asarray(x, dtype=complex), np.asarray(y, dtype=complex)
        )


@dataclass(frozen=True)
class CorrespondenceMorphism:
    """A linear carrier map between correspondences over the same algebras."""

    source: Correspondence
    target: Correspondence
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError("morphism matrix shape mismatch")
        object.__setattr__(self, "matrix", m)

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=complex)

    @property
    def is_bijective(self) -> bool:
        return (
            self.source.dim == self.target.dim
            and numerical_rank(self.matrix) == self.source.dim
        )


def _left_matrix(corr: KreinBimodule, a) -> np.ndarray:
    c = corr.left_algebra.coefficients(a)
    return np.tensordot(c, corr.left_action, axes=(0, 0))


def _right_matrix(corr: KreinBimodule, b) -> np.ndarray:
    c = corr.algebra.coefficients(b)
    return np.tensordot(c, corr.action, axes=(0, 0))


def _scalar_krein_algebra() -> KreinCStarAlgebra:
    return KreinCStarAlgebra(
        np.ones((1, 1, 1), dtype=complex), np.eye(1, dtype=complex), label="C"
    )


def _as_correspondence(bimodule: KreinBimodule) -> Correspondence:
    return Correspondence(
        algebra=bimodule.algebra,
        dim=bimodule.dim,
        action=bimodule.action,
        inner=bimodule.inner,
        symmetry=bimodule.symmetry,
        left_algebra=bimodule.left_algebra,
        left_action=bimodule.left_action,
        left_inner=bimodule.left_inner,
    )


def identity_correspondence(algebra: KreinCStarAlgebra) -> Correspondence:
    """The algebra over itself with ⟨a1, a2⟩ = star(a1) a2 and J = alpha."""
    return _as_correspondence(self_module(algebra))


def krein_space_correspondence(p: int, q: int) -> Correspondence:
    """C^{p,q} as a correspondence from the scalars to the scalars."""
    n = p + q
    if n < 1:
        raise ValidationError("p + q must be at least 1")
    eta = np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)
    scalars = _scalar_krein_algebra()
    inner = eta[:, :, None, None].copy()
    return Correspondence(
        algebra=scalars,
        dim=n,
        action=np.eye(n, dtype=complex)[None, :, :],
        inner=inner,
        symmetry=eta,
        left_algebra=scalars,
        left_action=np.eye(n, dtype=complex)[None, :, :],
        left_inner=inner.copy(),
    )


def spinor_correspondence(space: PseudoEuclideanSpace) -> Correspondence:
    """Spinors as an arrow from the Clifford algebra to the scalars."""
    return _as_correspondence(spinor_module(space))


# -- internal tensor product ----------------------------------------------------


def internal_tensor(
    m: Correspondence,
    n: Correspondence,
    budget: int = 2_000_000,
    tol: float = RANK_TOL,
    section_rotation: np.random.Generator | None = None,
) -> TensorCorrespondence:
    """The balanced tensor product over the shared middle algebra.

    ``section_rotation`` optionally re-picks the orthonormal section by a
    random unitary change of quotient basis; the descended structures must
    not depend on this choice beyond the change of basis itself.
    """
    mid = m.algebra
    if (
        mid.dim != n.left_algebra.dim
        or mid.basis.shape != n.left_algebra.basis.shape
        or not np.allclose(mid.basis, n.left_algebra.basis, atol=1e-12)
        or not np.allclose(mid.eta, n.left_algebra.eta, atol=1e-12)
    ):
        raise ValidationError("middle algebras do not match")
    dm, dn = m.dim, n.dim
    plain = dm * dn
    nb = mid.basis.shape[0]
    if plain * dm * nb * dn > budget:
        raise ResourceBudgetError(
            f"balancing enumeration needs {plain * dm * nb * dn} entries, "
            f"budget {budget}"
        )

    eye_m = np.eye(dm, dtype=complex)
    eye_n = np.eye(dn, dtype=complex)
    relations = []
    for i in range(dm):
        for b in mid.basis:
            xb = m.act(eye_m[i], b)
            for k in range(dn):
                by = n.act_left(b, eye_n[k])
                relations.append(np.kron(xb, eye_n[k]) - np.kron(eye_m[i], by))
    qdim, projector, section = quotient_space(plain, relations, tol)
    if section_rotation is not None:
        w = _random_unitary(section_rotation, qdim)
        section = section @ w
        projector = w.conj().T @ projector

    kernel = np.eye(plain) - section @ projector  # projector onto relations

    def descend(t_plain: np.ndarray, name: str) -> np.ndarray:
        defect = operator_norm(projector @ t_plain @ kernel)
        scale = max(operator_norm(t_plain), 1.0)
        if defect > 1e-8 * scale:
            raise ValidationError(f"{name} does not descend to the quotient")
        return projector @ t_plain @ section

    action = np.stack(
        [descend(np.kron(eye_m, n.action[k]), "right action") for k in range(n.action.shape[0])]
    )
    left_action = np.stack(
        [
            descend(np.kron(m.left_action[k], eye_n), "left action")
            for k in range(m.left_action.shape[0])
        ]
    )
    symmetry = descend(np.kron(m.symmetry, n.symmetry), "symmetry")

    # plain inner product <x1 (x) y1, x2 (x) y2> = <y1, <x1,x2> y2>
    dc = n.algebra.dim
    ip_plain = np.zeros((plain, plain, dc, dc), dtype=complex)
    for i in range(dm):
        for j in range(dm):
            lmat = _left_matrix(n, m.inner[i, j])
            block = np.einsum("ml,kmab->klab", lmat, n.inner)
            ip_plain[i * dn : (i + 1) * dn, j * dn : (j + 1) * dn] = block
    defect = max(
        np.linalg.norm(np.einsum("ba,bjcd->ajcd", kernel.conj(), ip_plain)),
        np.linalg.norm(np.einsum("bj,ibcd->ijcd", kernel, ip_plain)),
    )
    if defect > 1e-8 * max(np.linalg.norm(ip_plain), 1.0):
        raise ValidationError("inner product does not descend to the quotient")
    inner = np.einsum("au,bv,abcd->uvcd", section.conj(), section, ip_plain)
    if numerical_rank(inner.reshape(qdim, -1)) < qdim:
        raise DegenerateDescentError("descended inner product is degenerate")

    return TensorCorrespondence(
        algebra=n.algebra,
        dim=qdim,
        action=action,
        inner=inner,
        symmetry=symmetry,
        left_algebra=m.left_algebra,
        left_action=left_action,
        left_inner=None,
        projector=projector,
        section=section,
        factor_dims=(dm, dn),
    )


def _random_unitary(rng: np.random.Generator, k: int) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, k, k))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def even_odd_decomposition_check(
    t: TensorCorrespondence,
    m: Correspondence,
    n: Correspondence,
    tol: float = 1e-8,
) -> Report:
    """The descended symmetry's eigenspaces against the pushed-forward
    products of the factors' halves: even = (+,+) with (−,−), odd = mixed."""
    report = Report(
        title="tensor symmetry decomposition",
        seed=0,
        samples=0,
        environment={"dim": t.dim},
    )
    halves_m = _symmetry_halves(m.symmetry)
    halves_n = _symmetry_halves(n.symmetry)
    pushed_even, pushed_odd = [], []
    for sm, bm in halves_m.items():
        for sn, bn in halves_n.items():
            target = pushed_even if sm == sn else pushed_odd
            for u in bm.T:
                for v in bn.T:
                    target.append(t.elementary(u, v))
    desc_halves = _symmetry_halves(t.symmetry)
    for sign, pushed, name in (
        (+1, pushed_even, "even part matches matched-sign tensors"),
        (-1, pushed_odd, "odd part matches mixed-sign tensors"),
    ):
        eig = Subspace(t.dim, desc_halves[sign])
        span = column_space(np.stack(pushed, axis=1)) if pushed else None
        if span is None or span.dim != eig.dim:
            report.check(name, 1.0, tol, detail="dimension mismatch")
            continue
        worst = max(
            max(
                (np.linalg.norm(v - eig.project(v)) for v in span.basis.T),
                default=0.0,
            ),
            max(
                (np.linalg.norm(v - span.project(v)) for v in eig.basis.T),
                default=0.0,
            ),
        )
        report.check(name, worst, tol)
    return report


def _symmetry_halves(j: np.ndarray) -> dict:
    w, v = np.linalg.eig(j)
    out = {}
    for sign in (+1, -1):
        cols = v[:, np.abs(w - sign) < 1e-6]
        out[sign] = column_space(cols).basis if cols.size else np.zeros((j.shape[0], 0))
    return out


# -- unit and associativity isomorphisms ------------------------------------------


def right_unit_iso(m: Correspondence) -> CorrespondenceMorphism:
    """M ⊗ id(B) → M by x ⊗ b ↦ x·b."""
    ident = identity_correspondence(m.algebra)
    t = internal_tensor(m, ident)
    iso_plain = np.zeros((m.dim, m.dim * ident.dim), dtype=complex)
    eye_m = np.eye(m.dim, dtype=complex)
    for i in range(m.dim):
        for k in range(ident.dim):
            b = m.algebra.from_coefficients(np.eye(ident.dim)[k])
            iso_plain[:, i * ident.dim + k] = m.act(eye_m[i], b)
    return CorrespondenceMorphism(t, m, iso_plain @ t.section)


def left_unit_iso(m: Correspondence) -> CorrespondenceMorphism:
    """id(A) ⊗ M → M by a ⊗ x ↦ a·x."""
    ident = identity_correspondence(m.left_algebra)
    t = internal_tensor(ident, m)
    iso_plain = np.zeros((m.dim, ident.dim * m.dim), dtype=complex)
    eye_m = np.eye(m.dim, dtype=complex)
    for k in range(ident.dim):
        a = m.left_algebra.from_coefficients(np.eye(ident.dim)[k])
        for i in range(m.dim):
            iso_plain[:, k * m.dim + i] = m.act_left(a, eye_m[i])
    return CorrespondenceMorphism(t, m, iso_plain @ t.section)


def associativity_iso(
    m: Correspondence, n: Correspondence, p: Correspondence
) -> tuple[CorrespondenceMorphism, TensorCorrespondence, TensorCorrespondence]:
    """(M⊗N)⊗P → M⊗(N⊗P) through the two quotient presentations."""
    mn = internal_tensor(m, n)
    np_ = internal_tensor(n, p)
    lhs = internal_tensor(mn, p)
    rhs = internal_tensor(m, np_)
    eye_m = np.eye(m.dim, dtype=complex)
    eye_p = np.eye(p.dim, dtype=complex)
    expand = np.kron(mn.section, eye_p)  # (dm*dn*dp, q_mn*dp)
    regroup = np.kron(eye_m, np_.projector)  # (dm*q_np, dm*dn*dp)
    matrix = rhs.projector @ regroup @ expand @ lhs.section
    return CorrespondenceMorphism(lhs, rhs, matrix), lhs, rhs


def check_morphism(
    mor: CorrespondenceMorphism,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
    require_isometric: bool = True,
) -> Report:
    """Bimodule-map property, bijectivity, and inner preservation."""
    rng = np.random.default_rng(seed)
    src, dst = mor.source, mor.target
    report = Report(
        title="correspondence morphism",
        seed=seed,
        samples=samples,
        environment={"source_dim": src.dim, "target_dim": dst.dim},
    )
    report.check("bijective", 0.0 if mor.is_bijective else 1.0, 0.5)
    worst_bimod, worst_inner, worst_j = 0.0, 0.0, 0.0
    for _ in range(samples):
        x = src.random_element(rng)
        y = src.random_element(rng)
        a = src.left_algebra.random_element(rng)
        b = src.algebra.random_element(rng)
        scale = max(
            np.linalg.norm(x) * operator_norm(a) * operator_norm(b), 1e-30
        )
        lhs = mor(src.act(src.act_left(a, x), b))
        rhs = dst.act(dst.act_left(a, mor(x)), b)
        worst_bimod = max(worst_bimod, np.linalg.norm(lhs - rhs) / scale)
        sxy = max(np.linalg.norm(x) * np.linalg.norm(y), 1e-30)
        worst_inner = max(
            worst_inner,
            operator_norm(dst.pairing(mor(x), mor(y)) - src.pairing(x, y)) / sxy,
        )
        worst_j = max(
            worst_j,
            np.linalg.norm(mor(src.j(x)) - dst.j(mor(x)))
            / max(np.linalg.norm(x), 1e-30),
        )
    report.check("intertwines both actions", worst_bimod, tol)
    if require_isometric:
        report.check("preserves inner products", worst_inner, tol)
        report.check("intertwines symmetries", worst_j, tol)
    return report


# -- contragredient ---------------------------------------------------------------


def contragredient(m: Correspondence) -> Correspondence:
    """The conjugate correspondence with the sides swapped.

    Carrier coordinates are conjugated; actions follow b·x̄·a = conj(a* x b*)
    and the two products trade places.
    """
    if m.left_inner is None:
        raise ValidationError("contragredient needs both inner products")
    la, ra = m.left_algebra, m.algebra
    new_right = np.stack(
        [_left_matrix(m, la.star(a)).conj() for a in la.basis]
    )
    new_left = np.stack([_right_matrix(m, ra.star(b)).conj() for b in ra.basis])
    return Correspondence(
        algebra=la,
        dim=m.dim,
        action=new_right,
        inner=m.left_inner.copy(),
        symmetry=m.symmetry.conj(),
        left_algebra=ra,
        left_action=new_left,
        left_inner=m.inner.copy(),
    )


def double_contragredient_iso(m: Correspondence) -> CorrespondenceMorphism:
    """The natural identification of m with its double contragredient."""
    return CorrespondenceMorphism(
        m, contragredient(contragredient(m)), np.eye(m.dim, dtype=complex)
    )


# -- verification suites -----------------------------------------------------------


def check_correspondence(
    corr: Correspondence, samples: int = 100, seed: int = 0, tol: float = 1e-9
) -> Report:
    """Module axioms plus the correspondence-specific laws."""
    report = check_module_over_krein(corr, samples=samples, seed=seed, tol=tol)
    report.title = "correspondence axioms"
    rng = np.random.default_rng(seed + 1)
    worst_adj = 0.0
    for a in corr.left_algebra.basis:
        if not is_adjointable(corr, _left_matrix(corr, a)):
            worst_adj = 1.0
    report.check("left action adjointable", worst_adj, 0.5)
    worst_beta = 0.0
    for _ in range(samples):
        x = corr.random_element(rng)
        b = corr.algebra.random_element(rng)
        lhs = corr.act(x, corr.algebra.alpha(b))
        rhs = corr.j(corr.act(corr.j(x), b))
        worst_beta = max(
            worst_beta,
            np.linalg.norm(lhs - rhs)
            / max(np.linalg.norm(x) * operator_norm(b), 1e-30),
        )
    report.check("twisted action identity", worst_beta, tol)
    return report


def check_krein_star_hom(
    phi,
    source: KreinCStarAlgebra,
    target: KreinCStarAlgebra,
    alpha=None,
    beta=None,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
) -> Report:
    """Unitality, multiplicativity, star-preservation, and the intertwining
    of the two fundamental automorphisms for an algebra map phi."""
    alpha = alpha if alpha is not None else source.alpha
    beta = beta if beta is not None else target.alpha
    rng = np.random.default_rng(seed)
    report = Report(
        title="Kreĭn *-homomorphism",
        seed=seed,
        samples=samples,
        environment={"source_dim": source.dim, "target_dim": target.dim},
    )
    unital = operator_norm(phi(source.identity()) - target.identity())
    report.check("unital", unital, tol)
    worst = dict.fromkeys(
        ["multiplicative", "star-preserving", "intertwines alpha and beta"], 0.0
    )
    for _ in range(samples):
        a = source.random_element(rng)
        b = source.random_element(rng)
        na = max(operator_norm(a), 1e-30)
        nnb = max(operator_norm(b), 1e-30)
        worst["multiplicative"] = max(
            worst["multiplicative"],
            operator_norm(phi(a @ b) - phi(a) @ phi(b)) / (na * nnb),
        )
        worst["star-preserving"] = max(
            worst["star-preserving"],
            operator_norm(phi(source.star(a)) - target.star(phi(a))) / na,
        )
        worst["intertwines alpha and beta"] = max(
            worst["intertwines alpha and beta"],
            operator_norm(phi(alpha(a)) - beta(phi(a))) / na,
        )
    for name, value in worst.items():
        report.check(name, value, tol)
    return report


def morita_krein_check(
    corr: Correspondence, samples: int = 100, seed: int = 0, tol: float = 1e-9
) -> Report:
    """Certify a Morita-Kreĭn equivalence bimodule: module axioms on both
    sides, imprimitivity, and two-sided fullness."""
    if corr.left_inner is None:
        raise ValidationError("certification needs both inner products")
    report = check_module_over_krein(corr, samples=samples, seed=seed, tol=tol)
    report.title = "Morita-Kreĭn certification"
    report.extend(check_imprimitivity(corr, samples=samples, seed=seed + 1, tol=tol))
    return report


def spinor_factorization_check(
    space: PseudoEuclideanSpace, samples: int = 200, seed: int = 0, tol: float = 1e-9
) -> Report:
    """S ⊗_C S̄ against the Clifford algebra acting on the exterior algebra.

    The identification sends psi ⊗ phi-bar to the operator psi phi† A,
    expanded over gamma-matrix monomials and read as exterior coordinates.
    """
    s = spinor_correspondence(space)
    sbar = contragredient(s)
    t = internal_tensor(s, sbar)
    report = Report(
        title="spinor factorization",
        seed=seed,
        samples=samples,
        environment={"p": space.p, "q": space.q},
    )
    lam_dim = space.grassmann_dim
    report.check(
        "dimension product matches exterior algebra",
        float(abs(t.dim - lam_dim)),
        0.5,
        detail=f"{s.dim}·{sbar.dim} vs 2^{space.n}",
    )
    if t.dim != lam_dim:
        return report

    rep = gamma_rep(space)
    d = rep.spinor_dim
    gamma_alg = s.left_algebra
    cl = clifford_krein_algebra(space)
    eye = np.eye(d, dtype=complex)
    # plain elementary tensors -> exterior coordinates, then through the section
    v_plain = np.zeros((lam_dim, d * d), dtype=complex)
    for i in range(d):
        for k in range(d):
            op = np.outer(eye[i], eye[k]) @ rep.a
            v_plain[:, i * d + k] = gamma_alg.coefficients(op)
    v = v_plain @ t.section
    report.check(
        "identification bijective",
        0.0 if numerical_rank(v) == lam_dim else 1.0,
        0.5,
    )
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        c = random_complex(rng, lam_dim)
        left_t = np.tensordot(c, t.left_action, axes=(0, 0))
        left_lambda = np.tensordot(c, cl.basis, axes=(0, 0))
        x = random_complex(rng, t.dim)
        lhs = v @ (left_t @ x)
        rhs = left_lambda @ (v @ x)
        worst = max(
            worst,
            np.linalg.norm(lhs - rhs)
            / max(np.linalg.norm(c) * np.linalg.norm(x), 1e-30),
        )
    report.check("intertwines left Clifford actions", worst, tol)
    return report
