"""Scenario runner: packages the library's randomized verification suites
into named, seeded, reproducible check lists.

Every scenario emits a fixed set of record names (the coverage manifest);
the full gallery re-runs all scenarios and fails if any expected record is
missing.  Each scenario also carries at least one deliberately corrupted
structure whose check must fail, guarding against vacuous passes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .algebra import (
    FiniteCStarAlgebra,
    KreinCStarAlgebra,
    bounded_operators,
    check_krein_cstar_axioms,
    functions_on_points,
)
from .clifford import (
    PseudoEuclideanSpace,
    clifford_generator_matrix,
    clifford_krein_algebra,
    conjugate_reversal_coeffs,
    clifford_action,
    gamma_rep,
    random_multivector,
    scalar_one,
    second_quantized_J,
    spinor_module,
    spinor_signature,
    vector,
    wedge,
    grassmann_inner,
)
from .correspondence import (
    Correspondence,
    DegenerateDescentError,
    ResourceBudgetError,
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
    spinor_factorization_check,
)
from .krein_module import (
    FundamentalSymmetry,
    KreinModule,
    fundamental_decomposition,
    hilbert_adjoint,
    hilbertify,
    hyperbolic_symmetry,
    intertwiner,
    krein_adjoint,
    krein_space,
    norm_equivalence_constants,
    random_symmetry,
    standard_symmetry,
)
from .krein_over_krein import (
    KreinModuleOverKrein,
    adjoint_residual,
    check_imprimitivity,
    check_module_over_krein,
    krein_adjoint_over_krein,
    operator_bimodule,
    rank_one,
    self_module,
)
from .linalg import (
    ValidationError,
    min_hermitian_eig,
    numerical_rank,
    operator_norm,
    random_complex,
)
from .report import Report

SCENARIOS = (
    "krein-algebra",
    "module",
    "module-over-krein",
    "clifford",
    "spinor",
    "tensor",
    "full-gallery",
)

DEMOS = ("minkowski", "torus", "spinor-m4")

MAX_TOTAL_SIGNATURE = 12


class ConfigError(ValueError):
    """Invalid check configuration (a usage error, not a check failure)."""


@dataclass(frozen=True)
class CheckConfig:
    """Parameters of one verification run."""

    scenario: str
    seed: int = 42
    samples: int = 100
    tol: float = 1e-9
    p: int = 1
    q: int = 1
    rank: int = 2
    block: int = 2

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if self.samples < 1:
            raise ConfigError("samples must be at least 1")
        if self.tol <= 0:
            raise ConfigError("tol must be positive")
        if self.p < 0 or self.q < 0:
            raise ConfigError("signature counts must be non-negative")
        if self.p + self.q > MAX_TOTAL_SIGNATURE:
            raise ConfigError(
                f"p + q must not exceed {MAX_TOTAL_SIGNATURE} "
                "(exterior algebra dimension cap)"
            )
        if self.rank < 1 or self.block < 1:
            raise ConfigError("rank and block size must be positive")


# one record name per operation-level invariant; the gallery coverage
# check fails if any of these is missing from the merged report
COVERAGE_MANIFEST = {
    "krein-algebra": (
        "eta hermitian",
        "eta involutive",
        "star involutive",
        "star antimultiplicative",
        "alpha involutive",
        "alpha multiplicative",
        "alpha star-compatible",
        "cstar identity",
        "even part alpha-fixed",
        "odd times odd is even",
        "cstar identity on B(C^{1,1})",
        "cstar identity on B(C^{2,1})",
        "cstar identity on B(C^{2,2})",
        "negative control: corrupted eta",
    ),
    "module": (
        "symmetry squares to identity",
        "symmetry self-adjoint for the form",
        "positive half semidefinite",
        "negative half semidefinite",
        "hilbertified gram positive definite",
        "decomposition exhausts the carrier",
        "adjoint solves the inner relation",
        "adjoint dictionary twisted vs hilbertified",
        "transition maps bijective",
        "intertwiner exchanges symmetries",
        "intertwiner unitary for the form",
        "hyperbolic norm constants",
        "negative control: scaled minus transition",
        "negative control: degenerate gram rejected",
    ),
    "module-over-krein": (
        "J involutive",
        "inner non-degenerate",
        "action associative",
        "inner right-linear",
        "inner star-hermitian",
        "J twists over alpha",
        "alpha of inner is inner of J pair",
        "auxiliary product positive",
        "linking identity",
        "left products full",
        "right products full",
        "adjoint dictionary auxiliary vs twisted",
        "rank-one adjoint swaps arguments",
        "negative control: symmetry not adjointable",
    ),
    "clifford": (
        "generator anticommutators",
        "gram determinant oracle",
        "top blade value in signature (1,1)",
        "second quantized symmetry preserves pairing",
        "second quantized auxiliary form positive",
        "clifford product associative",
        "clifford grassmann bijection",
        "representation faithful",
        "star equals conjugate reversal",
        "clifford cstar identity",
        "negative control: degenerate metric gram",
    ),
    "spinor": (
        "gamma anticommutators",
        "spinor form hermitian involutive",
        "spinor signature (1,1)",
        "spinor signature (1,3)",
        "spinor signature (2,2)",
        "spinor twisting over alpha",
        "spinor auxiliary gram standard",
        "dimension product matches exterior algebra",
        "intertwines left Clifford actions",
        "negative control: scaled spinor form",
    ),
    "tensor": (
        "matrix algebra self-tensor dimension",
        "right unit law",
        "left unit law",
        "associativity isomorphism",
        "even part matches matched-sign tensors",
        "odd part matches mixed-sign tensors",
        "section independence",
        "gamma compatibility of descended product",
        "left action adjointable on tensor",
        "double contragredient identity",
        "unital",
        "multiplicative",
        "star-preserving",
        "intertwines alpha and beta",
        "negative control: non-intertwining homomorphism",
        "negative control: degenerate descent",
    ),
}


def run(config: CheckConfig) -> Report:
    """Execute a scenario; deterministic for fixed config."""
    if config.scenario == "full-gallery":
        return _full_gallery(config)
    runner = {
        "krein-algebra": _scenario_krein_algebra,
        "module": _scenario_module,
        "module-over-krein": _scenario_module_over_krein,
        "clifford": _scenario_clifford,
        "spinor": _scenario_spinor,
        "tensor": _scenario_tensor,
    }[config.scenario]
    report = runner(config)
    _coverage_check(report, config.scenario)
    return report


def _coverage_check(report: Report, scenario: str, prefix: str = ""):
    names = {r.name for r in report.records}
    missing = [
        n for n in COVERAGE_MANIFEST[scenario] if prefix + n not in names
    ]
    report.check(
        prefix + "coverage manifest complete",
        float(len(missing)),
        0.5,
        detail="missing: " + ", ".join(missing) if missing else "all present",
    )


def _full_gallery(config: CheckConfig) -> Report:
    report = Report(
        title="full gallery",
        seed=config.seed,
        samples=config.samples,
        environment={"scenarios": list(COVERAGE_MANIFEST)},
    )
    presets = {
        "krein-algebra": replace(config, scenario="krein-algebra", p=2, q=1),
        "module": replace(config, scenario="module", p=2, q=2),
        "module-over-krein": replace(
            config, scenario="module-over-krein", p=1, q=1
        ),
        "clifford": replace(config, scenario="clifford", p=2, q=2),
        "spinor": replace(config, scenario="spinor", p=1, q=1),
        "tensor": replace(config, scenario="tensor", p=1, q=1),
    }
    for name, sub in presets.items():
        sub_report = run(sub)
        report.extend(sub_report, prefix=f"{name}: ")
    return report


# -- scenario: the algebra axioms -------------------------------------------------


def _scenario_krein_algebra(config: CheckConfig) -> Report:
    alg = bounded_operators(config.p, config.q)
    report = check_krein_cstar_axioms(
        alg, samples=config.samples, seed=config.seed, tol=config.tol
    )
    report.title = f"Kreĭn algebra scenario {alg.label}"

    for pp, qq in ((1, 1), (2, 1), (2, 2)):
        a = bounded_operators(pp, qq)
        rng = np.random.default_rng(config.seed + pp * 10 + qq)
        worst = 0.0
        for _ in range(config.samples):
            x = a.random_element(rng)
            nx = a.norm(x)
            worst = max(
                worst, abs(a.norm(a.alpha(a.star(x)) @ x) - nx * nx) / (nx * nx)
            )
        report.check(f"cstar identity on B(C^{{{pp},{qq}}})", worst, config.tol)

    d = config.p + config.q
    bad_eta = np.diag(np.concatenate([np.ones(d - 1), [-2.0]])).astype(complex)
    bad = KreinCStarAlgebra(
        FiniteCStarAlgebra((d,)).basis(), bad_eta, validate=False
    )
    bad_report = check_krein_cstar_axioms(bad, samples=10, seed=config.seed)
    viol = next(
        r.max_violation for r in bad_report.records if r.name == "eta involutive"
    )
    report.check(
        "negative control: corrupted eta",
        viol,
        1e-10,
        detail="eta with an eigenvalue of -2 must break involutivity",
        expected_fail=True,
    )
    return report


# -- scenario: modules over C*-algebras --------------------------------------------


def _scenario_module(config: CheckConfig) -> Report:
    report = Report(
        title="Kreĭn module scenario",
        seed=config.seed,
        samples=config.samples,
        environment={"p": config.p, "q": config.q, "rank": config.rank},
    )
    space = krein_space(config.p, config.q)
    signs = [1.0] * ((config.rank + 1) // 2) + [-1.0] * (config.rank // 2)
    matrix_module = KreinModule(
        FiniteCStarAlgebra((config.block,)),
        config.rank,
        np.kron(np.diag(signs), np.eye(config.block)).astype(complex),
    )
    rng = np.random.default_rng(config.seed)
    n_sym = 20

    worst = {
        "symmetry squares to identity": 0.0,
        "symmetry self-adjoint for the form": 0.0,
        "positive half semidefinite": 0.0,
        "negative half semidefinite": 0.0,
        "hilbertified gram positive definite": 0.0,
        "decomposition exhausts the carrier": 0.0,
        "adjoint solves the inner relation": 0.0,
        "adjoint dictionary twisted vs hilbertified": 0.0,
        "transition maps bijective": 0.0,
        "intertwiner exchanges symmetries": 0.0,
        "intertwiner unitary for the form": 0.0,
    }
    for module in (space, matrix_module):
        nk = module.flat_dim
        eye = np.eye(nk)
        symmetries = [standard_symmetry(module)] + [
            random_symmetry(module, rng) for _ in range(n_sym)
        ]
        for j in symmetries:
            jm = j.matrix
            worst["symmetry squares to identity"] = max(
                worst["symmetry squares to identity"],
                operator_norm(jm @ jm - eye),
            )
            worst["symmetry self-adjoint for the form"] = max(
                worst["symmetry self-adjoint for the form"],
                operator_norm(jm.conj().T @ module.gram - module.gram @ jm),
            )
            for sign, key in ((+1, "positive half semidefinite"), (-1, "negative half semidefinite")):
                pr = eye + sign * jm
                form = sign * (pr.conj().T @ module.gram @ pr)
                worst[key] = max(worst[key], max(0.0, -min_hermitian_eig(form)))
            h = hilbertify(module, j)
            worst["hilbertified gram positive definite"] = max(
                worst["hilbertified gram positive definite"],
                max(0.0, -min_hermitian_eig(h.gram)),
            )
            plus, minus = fundamental_decomposition(module, j)
            carrier_dim = module.rank * module.base.vector_dim
            worst["decomposition exhausts the carrier"] = max(
                worst["decomposition exhausts the carrier"],
                float(abs(plus.dim + minus.dim - carrier_dim)),
            )
            t = module.random_operator(rng)
            ts = krein_adjoint(module, j, t)
            x, y = module.random_element(rng), module.random_element(rng)
            worst["adjoint solves the inner relation"] = max(
                worst["adjoint solves the inner relation"],
                operator_norm(module.inner(t @ x, y) - module.inner(x, ts @ y))
                / max(operator_norm(t), 1.0),
            )
            dag = hilbert_adjoint(module, j, t)
            worst["adjoint dictionary twisted vs hilbertified"] = max(
                worst["adjoint dictionary twisted vs hilbertified"],
                operator_norm(ts - jm @ dag @ jm) / max(operator_norm(t), 1.0),
            )
        for j1, j2 in zip(symmetries[:-1], symmetries[1:]):
            u = intertwiner(module, j1, j2)
            worst["intertwiner exchanges symmetries"] = max(
                worst["intertwiner exchanges symmetries"],
                operator_norm(u @ j1.matrix - j2.matrix @ u),
            )
            worst["intertwiner unitary for the form"] = max(
                worst["intertwiner unitary for the form"],
                operator_norm(krein_adjoint(module, j1, u) @ u - eye),
            )
            bij = 0.0
            for sign in (+1, -1):
                comp = j2.projector(sign) @ j1.projector(sign)
                half_dim = fundamental_decomposition(module, j1)[0 if sign > 0 else 1].dim
                rank = numerical_rank(
                    module.lift_operator(comp)
                    @ fundamental_decomposition(module, j1)[0 if sign > 0 else 1].basis
                )
                bij = max(bij, float(abs(rank - half_dim)))
            worst["transition maps bijective"] = max(
                worst["transition maps bijective"], bij
            )
    for name, value in worst.items():
        report.check(name, value, config.tol)

    c11 = krein_space(1, 1)
    j1 = standard_symmetry(c11)
    j2 = FundamentalSymmetry(c11, hyperbolic_symmetry(0.3))
    lo, hi = norm_equivalence_constants(c11, j1, j2)
    report.check(
        "hyperbolic norm constants",
        max(abs(lo - np.exp(-0.3)), abs(hi - np.exp(0.3))),
        1e-6,
        detail="rotation parameter t = 0.3",
    )

    ja = standard_symmetry(space)
    jb = random_symmetry(space, np.random.default_rng(config.seed + 1))
    bad = jb.projector(+1) @ ja.projector(+1) + 2.0 * (
        jb.projector(-1) @ ja.projector(-1)
    )
    report.check(
        "negative control: scaled minus transition",
        operator_norm(krein_adjoint(space, ja, bad) @ bad - np.eye(space.flat_dim)),
        config.tol,
        detail="doubling the negative transition map must break unitarity",
        expected_fail=True,
    )
    try:
        KreinModule(
            FiniteCStarAlgebra((1,)), 2, np.diag([1.0, 0.0]).astype(complex)
        )
        rejected = 0.0
    except ValidationError:
        rejected = 1.0
    report.check(
        "negative control: degenerate gram rejected",
        rejected,
        0.5,
        detail="a singular gram matrix must be refused at construction",
        expected_fail=True,
    )
    return report


# -- scenario: modules over Kreĭn algebras -----------------------------------------


def _scenario_module_over_krein(config: CheckConfig) -> Report:
    algebra = bounded_operators(config.p, config.q)
    module = self_module(algebra)
    report = check_module_over_krein(
        module, samples=config.samples, seed=config.seed, tol=config.tol
    )
    report.title = f"module over {algebra.label}"
    report.extend(
        check_imprimitivity(
            module, samples=config.samples, seed=config.seed + 1, tol=config.tol
        )
    )
    other = operator_bimodule(algebra, bounded_operators(1, 1))
    report.extend(
        check_module_over_krein(
            other, samples=config.samples, seed=config.seed + 2, tol=config.tol
        ),
        prefix="operator bimodule: ",
    )

    rng = np.random.default_rng(config.seed + 3)
    aux_inner = np.einsum("kj,ikab->ijab", module.symmetry, module.inner)
    aux_module = KreinModuleOverKrein(
        algebra=module.algebra,
        dim=module.dim,
        action=module.action,
        inner=aux_inner,
        symmetry=module.symmetry,
    )
    worst_dict, worst_swap = 0.0, 0.0
    for _ in range(min(config.samples, 50)):
        x, y = module.random_element(rng), module.random_element(rng)
        t = rank_one(module, x, y)
        ts = krein_adjoint_over_krein(module, t)
        aux_adj, _ = adjoint_residual(aux_module, t)
        dictionary = module.symmetry @ ts @ module.symmetry
        scale = max(operator_norm(t), 1.0)
        worst_dict = max(worst_dict, operator_norm(aux_adj - dictionary) / scale)
        worst_swap = max(
            worst_swap, operator_norm(ts - rank_one(module, y, x)) / scale
        )
    report.check("adjoint dictionary auxiliary vs twisted", worst_dict, 1e-7)
    report.check("rank-one adjoint swaps arguments", worst_swap, 1e-7)

    _, residual = adjoint_residual(module, module.symmetry)
    definite = algebra.is_trivially_definite
    report.check(
        "negative control: symmetry not adjointable",
        residual,
        1e-8,
        detail="the twisted symmetry of a genuinely indefinite algebra "
        "admits no adjoint",
        expected_fail=not definite,
    )
    return report


# -- scenario: Clifford and Grassmann ----------------------------------------------


def _laplace_det(m: np.ndarray) -> complex:
    k = m.shape[0]
    if k == 0:
        return 1.0 + 0j
    total = 0j
    for j in range(k):
        minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
        total += (-1) ** j * m[0, j] * _laplace_det(minor)
    return total


CLIFFORD_WORK_BUDGET = 500_000_000


def _scenario_clifford(config: CheckConfig) -> Report:
    space = PseudoEuclideanSpace(config.p, config.q)
    work = space.grassmann_dim**3
    if work > CLIFFORD_WORK_BUDGET:
        raise ResourceBudgetError(
            f"exterior algebra of dimension {space.grassmann_dim} needs about "
            f"{work} flops per product, budget {CLIFFORD_WORK_BUDGET}"
        )
    report = Report(
        title=f"Clifford scenario R^{{{config.p},{config.q}}}",
        seed=config.seed,
        samples=config.samples,
        environment={"p": config.p, "q": config.q},
    )
    n = space.n
    gens = [clifford_generator_matrix(space, i) for i in range(n)]
    eye = np.eye(space.grassmann_dim)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            anti = gens[i] @ gens[j] + gens[j] @ gens[i]
            expected = 2.0 * (space.signs[i] if i == j else 0.0) * eye
            worst = max(worst, operator_norm(anti - expected))
    report.check("generator anticommutators", worst, 1e-12)

    rng = np.random.default_rng(config.seed)
    worst = 0.0
    deg = min(2, n)
    g = space.signs
    for _ in range(config.samples):
        vs = [random_complex(rng, n) for _ in range(deg)]
        ws = [random_complex(rng, n) for _ in range(deg)]
        bv, bw = scalar_one(space), scalar_one(space)
        for v, w in zip(vs, ws):
            bv, bw = wedge(bv, vector(space, v)), wedge(bw, vector(space, w))
        gram = np.array(
            [[np.sum(v.conj() * g * w) for w in ws] for v in vs]
        )
        worst = max(worst, abs(grassmann_inner(bv, bw) - _laplace_det(gram)))
    report.check("gram determinant oracle", worst, 1e-10)

    s11 = PseudoEuclideanSpace(1, 1)
    blade = wedge(
        vector(s11, [1.0, 0.0]), vector(s11, [0.0, 1.0])
    )
    report.check(
        "top blade value in signature (1,1)",
        abs(grassmann_inner(blade, blade) + 1.0),
        1e-12,
    )

    jmat = second_quantized_J(space)
    worst_inv, worst_pos = 0.0, 0.0
    for _ in range(min(config.samples, 50)):
        a = random_multivector(space, rng)
        b = random_multivector(space, rng)
        lhs = grassmann_inner(
            type(a)(space, jmat @ a.coeffs), type(b)(space, jmat @ b.coeffs)
        )
        worst_inv = max(worst_inv, abs(lhs - grassmann_inner(a, b)))
        aux = grassmann_inner(a, type(a)(space, jmat @ a.coeffs))
        worst_pos = max(worst_pos, max(0.0, -aux.real), abs(aux.imag))
    report.check("second quantized symmetry preserves pairing", worst_inv, 1e-9)
    report.check("second quantized auxiliary form positive", worst_pos, 1e-12)

    from .clifford import clifford_product

    worst = 0.0
    for _ in range(config.samples):
        a, b, c = (random_multivector(space, rng) for _ in range(3))
        lhs = clifford_product(clifford_product(a, b), c)
        rhs = clifford_product(a, clifford_product(b, c))
        worst = max(worst, (lhs - rhs).norm())
    report.check("clifford product associative", worst, 1e-10)

    from .clifford import basis_blade

    cols = np.stack(
        [
            clifford_action(space, basis_blade(space, m)) @ scalar_one(space).coeffs
            for m in range(space.grassmann_dim)
        ],
        axis=1,
    )
    report.check(
        "clifford grassmann bijection",
        float(space.grassmann_dim - numerical_rank(cols)),
        0.5,
    )

    alg = clifford_krein_algebra(space)
    flat = alg.basis.reshape(alg.basis.shape[0], -1)
    report.check(
        "representation faithful",
        float(space.grassmann_dim - numerical_rank(flat)),
        0.5,
    )
    report.extend(
        check_krein_cstar_axioms(
            alg, samples=min(config.samples, 50), seed=config.seed + 1, tol=config.tol
        ),
        prefix="algebra: ",
    )
    worst = 0.0
    for _ in range(min(config.samples, 50)):
        a = random_multivector(space, rng)
        lhs = alg.star(clifford_action(space, a))
        rhs = clifford_action(space, conjugate_reversal_coeffs(a))
        worst = max(worst, operator_norm(lhs - rhs))
    report.check("star equals conjugate reversal", worst, 1e-10)

    worst = 0.0
    for _ in range(config.samples):
        a = alg.random_element(rng)
        na = alg.norm(a)
        worst = max(
            worst, abs(alg.norm(alg.alpha(alg.star(a)) @ a) - na * na) / (na * na)
        )
    report.check("clifford cstar identity", worst, config.tol)

    degenerate = np.diag(np.concatenate([space.signs[:-1], [0.0]]))
    report.check(
        "negative control: degenerate metric gram",
        float(n - numerical_rank(degenerate + 0j)) if n else 1.0,
        0.5,
        detail="a null direction must make the metric gram rank-deficient",
        expected_fail=True,
    )
    return report


# -- scenario: spinors --------------------------------------------------------------


def _scenario_spinor(config: CheckConfig) -> Report:
    if (config.p + config.q) % 2 != 0:
        raise ConfigError("spinor scenario needs an even total dimension")
    space = PseudoEuclideanSpace(config.p, config.q)
    rep = gamma_rep(space)
    report = Report(
        title=f"spinor scenario R^{{{config.p},{config.q}}}",
        seed=config.seed,
        samples=config.samples,
        environment={"p": config.p, "q": config.q, "spinor_dim": rep.spinor_dim},
    )
    eye = np.eye(rep.spinor_dim)
    worst = 0.0
    for i in range(space.n):
        for j in range(space.n):
            anti = rep.gammas[i] @ rep.gammas[j] + rep.gammas[j] @ rep.gammas[i]
            expected = 2.0 * (space.signs[i] if i == j else 0.0) * eye
            worst = max(worst, operator_norm(anti - expected))
    report.check("gamma anticommutators", worst, 1e-12)
    report.check(
        "spinor form hermitian involutive",
        max(
            operator_norm(rep.a - rep.a.conj().T),
            operator_norm(rep.a @ rep.a - eye),
        ),
        1e-12,
    )
    for (pp, qq), expected in (((1, 1), (1, 1)), ((1, 3), (2, 2)), ((2, 2), (2, 2))):
        sig = spinor_signature(PseudoEuclideanSpace(pp, qq))
        report.check(
            f"spinor signature ({pp},{qq})",
            float(abs(sig[0] - expected[0]) + abs(sig[1] - expected[1])),
            0.5,
            detail=f"signature {sig}",
        )

    module = spinor_module(space)
    report.extend(
        check_module_over_krein(
            module, samples=config.samples, seed=config.seed, tol=config.tol
        ),
        prefix="module: ",
    )
    rng = np.random.default_rng(config.seed + 1)
    worst = 0.0
    for _ in range(config.samples):
        c = module.left_algebra.random_element(rng)
        psi = module.random_element(rng)
        lhs = module.j(module.act_left(c, psi))
        rhs = module.act_left(module.left_algebra.alpha(c), module.j(psi))
        worst = max(
            worst,
            np.linalg.norm(lhs - rhs)
            / max(np.linalg.norm(psi) * operator_norm(c), 1e-30),
        )
    report.check("spinor twisting over alpha", worst, 1e-10)
    gram = rep.a @ rep.a
    report.check(
        "spinor auxiliary gram standard", operator_norm(gram - eye), 1e-12
    )
    report.extend(
        morita_krein_check(
            _as_spinor_correspondence(space),
            samples=config.samples,
            seed=config.seed + 2,
            tol=config.tol,
        ),
        prefix="morita: ",
    )
    report.extend(
        spinor_factorization_check(
            space, samples=config.samples, seed=config.seed + 3, tol=config.tol
        )
    )
    bad = 2.0 * rep.a
    report.check(
        "negative control: scaled spinor form",
        operator_norm(bad @ bad - eye),
        1e-10,
        detail="doubling the form matrix must break involutivity",
        expected_fail=True,
    )
    return report


def _as_spinor_correspondence(space):
    from .correspondence import spinor_correspondence

    return spinor_correspondence(space)


# -- scenario: the tensor category --------------------------------------------------


def _scenario_tensor(config: CheckConfig) -> Report:
    report = Report(
        title="tensor category scenario",
        seed=config.seed,
        samples=config.samples,
        environment={"p": config.p, "q": config.q},
    )
    m2 = bounded_operators(2, 0)
    ident2 = identity_correspondence(m2)
    t22 = internal_tensor(ident2, ident2)
    report.check(
        "matrix algebra self-tensor dimension",
        float(abs(t22.dim - 4)),
        0.5,
        detail=f"dimension {t22.dim}",
    )
    ru = check_morphism(
        right_unit_iso(ident2), samples=config.samples, seed=config.seed
    )
    report.extend(ru, prefix="right unit: ")
    report.check("right unit law", 0.0 if ru.passed else 1.0, 0.5)
    lu = check_morphism(
        left_unit_iso(ident2), samples=config.samples, seed=config.seed + 1
    )
    report.extend(lu, prefix="left unit: ")
    report.check("left unit law", 0.0 if lu.passed else 1.0, 0.5)

    chain = associativity_iso(
        krein_space_correspondence(config.p, config.q),
        krein_space_correspondence(1, 0),
        krein_space_correspondence(0, 1),
    )[0]
    assoc = check_morphism(chain, samples=config.samples, seed=config.seed + 2)
    report.extend(assoc, prefix="associativity: ")
    report.check("associativity isomorphism", 0.0 if assoc.passed else 1.0, 0.5)

    mpq = krein_space_correspondence(config.p, config.q)
    t = internal_tensor(mpq, mpq)
    report.extend(even_odd_decomposition_check(t, mpq, mpq))

    t_rot = internal_tensor(
        mpq, mpq, section_rotation=np.random.default_rng(config.seed + 3)
    )
    cob = t.projector @ t_rot.section
    moved = np.einsum("au,bv,abcd->uvcd", cob.conj(), cob, t.inner)
    report.check(
        "section independence",
        float(np.linalg.norm(moved - t_rot.inner)),
        config.tol,
    )

    rng = np.random.default_rng(config.seed + 4)
    worst = 0.0
    beta = t.algebra.alpha
    for _ in range(min(config.samples, 50)):
        u = t.random_element(rng)
        v = t.random_element(rng)
        lhs = beta(t.pairing(u, v))
        rhs = t.pairing(t.j(u), t.j(v))
        worst = max(
            worst,
            operator_norm(lhs - rhs)
            / max(np.linalg.norm(u) * np.linalg.norm(v), 1e-30),
        )
    report.check("gamma compatibility of descended product", worst, 1e-10)

    from .krein_over_krein import is_adjointable

    adjointable = all(
        is_adjointable(
            t22,
            np.tensordot(
                t22.left_algebra.coefficients(a), t22.left_action, axes=(0, 0)
            ),
        )
        for a in t22.left_algebra.basis
    )
    report.check(
        "left action adjointable on tensor", 0.0 if adjointable else 1.0, 0.5
    )

    dc = check_morphism(
        double_contragredient_iso(ident2), samples=min(config.samples, 50),
        seed=config.seed + 5,
    )
    report.check(
        "double contragredient identity", 0.0 if dc.passed else 1.0, 0.5
    )

    b11 = bounded_operators(1, 1)
    hom = check_krein_star_hom(
        lambda a: a, b11, b11, samples=config.samples, seed=config.seed + 6
    )
    report.extend(hom)
    bad_hom = check_krein_star_hom(
        lambda a: a, b11, b11, beta=lambda b: b, samples=20, seed=config.seed + 7
    )
    viol = next(
        r.max_violation
        for r in bad_hom.records
        if r.name == "intertwines alpha and beta"
    )
    report.check(
        "negative control: non-intertwining homomorphism",
        viol,
        config.tol,
        detail="identity map against a trivialized target automorphism",
        expected_fail=True,
    )

    bad_inner = mpq.inner.copy()
    bad_inner[mpq.dim - 1, mpq.dim - 1] = 0.0
    bad = Correspondence(
        algebra=mpq.algebra,
        dim=mpq.dim,
        action=mpq.action,
        inner=bad_inner,
        symmetry=np.eye(mpq.dim, dtype=complex),
        left_algebra=mpq.left_algebra,
        left_action=mpq.left_action,
        left_inner=None,
    )
    try:
        internal_tensor(bad, identity_correspondence(mpq.algebra))
        degenerate = 0.0
    except DegenerateDescentError:
        degenerate = 1.0
    report.check(
        "negative control: degenerate descent",
        degenerate,
        0.5,
        detail="a rank-deficient pairing must be reported after descent",
        expected_fail=True,
    )
    return report


# -- demos -------------------------------------------------------------------------


def run_demo(
    name: str, seed: int = 42, samples: int = 100, tol: float = 1e-9
) -> tuple[Report, str]:
    """Named preset walkthroughs; returns the report and a narrative."""
    if name not in DEMOS:
        raise ConfigError(f"unknown demo {name!r}")
    if samples < 1 or tol <= 0:
        raise ConfigError("samples must be positive and tol positive")
    if name == "minkowski":
        return _demo_minkowski(seed, samples, tol)
    if name == "torus":
        return _demo_torus(seed, samples, tol)
    return _demo_spinor_m4(seed, samples, tol)


def _demo_minkowski(seed, samples, tol):
    space = PseudoEuclideanSpace(1, 3)
    from .clifford import gamma_algebra

    alg = gamma_algebra(gamma_rep(space))
    report = check_krein_cstar_axioms(alg, samples=samples, seed=seed, tol=tol)
    report.title = "demo: minkowski"
    sig = spinor_signature(space)
    report.check(
        "spinor signature (1,3)",
        float(abs(sig[0] - 2) + abs(sig[1] - 2)),
        0.5,
        detail=f"signature {sig}",
    )
    narrative = (
        "Four-dimensional space with one positive and three negative\n"
        "directions.  The gamma matrices realize its Clifford algebra on a\n"
        "4-dimensional spinor space; the normalized product of the\n"
        "positive-square gammas is the fundamental symmetry, and the\n"
        "indefinite spinor form it defines has signature (2,2).  The checks\n"
        "verify the twisted involution axioms for the operator algebra this\n"
        "generates."
    )
    return report, narrative


def _demo_torus(seed, samples, tol):
    points = 16
    base = functions_on_points(points)
    gram = np.kron(np.diag([1.0, -1.0]), np.eye(points)).astype(complex)
    module = KreinModule(base, 2, gram)
    report = Report(
        title="demo: torus",
        seed=seed,
        samples=samples,
        environment={"points": points, "fiber_signature": [1, 1]},
    )
    rng = np.random.default_rng(seed)
    j0 = standard_symmetry(module)
    symmetries = [j0] + [random_symmetry(module, rng) for _ in range(5)]
    worst_sq = worst_sa = worst_adj = 0.0
    eye = np.eye(module.flat_dim)
    for j in symmetries:
        worst_sq = max(worst_sq, operator_norm(j.matrix @ j.matrix - eye))
        worst_sa = max(
            worst_sa,
            operator_norm(j.matrix.conj().T @ module.gram - module.gram @ j.matrix),
        )
        t = module.random_operator(rng)
        ts = krein_adjoint(module, j, t)
        x, y = module.random_element(rng), module.random_element(rng)
        worst_adj = max(
            worst_adj,
            operator_norm(module.inner(t @ x, y) - module.inner(x, ts @ y))
            / max(operator_norm(t), 1.0),
        )
    report.check("fiberwise symmetry squares to identity", worst_sq, tol)
    report.check("fiberwise symmetry self-adjoint", worst_sa, tol)
    report.check("adjoint solves the inner relation", worst_adj, tol)
    h = hilbertify(module, j0)
    report.check(
        "hilbertified gram positive definite",
        max(0.0, -min_hermitian_eig(h.gram)),
        tol,
    )
    narrative = (
        "A rank-2 module over the commutative algebra of functions on 16\n"
        "points, with an indefinite fiberwise form of signature (1,1) at\n"
        "every point: the discrete stand-in for a line bundle pair with an\n"
        "indefinite metric over a torus.  The checks run the fundamental\n"
        "symmetry axioms and the adjoint dictionary fiberwise."
    )
    return report, narrative


def _demo_spinor_m4(seed, samples, tol):
    space = PseudoEuclideanSpace(1, 3)
    report = Report(
        title="demo: spinor-m4",
        seed=seed,
        samples=samples,
        environment={"p": 1, "q": 3},
    )
    report.extend(
        morita_krein_check(
            _as_spinor_correspondence(space), samples=samples, seed=seed, tol=tol
        ),
        prefix="morita: ",
    )
    report.extend(
        spinor_factorization_check(space, samples=samples, seed=seed + 1, tol=tol)
    )
    narrative = (
        "The spinor bimodule for the four-dimensional (1,3) space: full on\n"
        "both sides and imprimitive, so it certifies an equivalence between\n"
        "the Clifford algebra and the scalars.  Tensoring the spinors with\n"
        "their contragredient recovers the 16-dimensional exterior algebra,\n"
        "and the constructed identification intertwines the left Clifford\n"
        "actions."
    )
    return report, narrative
