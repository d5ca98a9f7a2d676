"""Dense complex linear algebra primitives shared by all higher layers.

Everything here operates on plain numpy complex arrays.  All functions are
pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9
RANK_TOL = 1e-8

# full SVD below this dimension, power iteration above
_SVD_DIM_LIMIT = 64
_POWER_TOL = 1e-12
_POWER_MAX_ITER = 100_000


class DimensionMismatchError(ValueError):
    pass


class ValidationError(ValueError):
    pass


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting NaN/Inf entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"expected a 2-d array, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValidationError("matrix has non-finite entries")
    return a


def hermitian_adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex_matrix(m).conj().T


def operator_norm(m) -> float:
    """Largest singular value.

    Full SVD at desk dimensions; power iteration on m†m above
    _SVD_DIM_LIMIT, where exact factorization gets expensive.
    """
    a = as_complex_matrix(m)
    if a.size == 0:
        return 0.0
    if max(a.shape) < _SVD_DIM_LIMIT:
        return float(np.linalg.svd(a, compute_uv=False)[0])
    return _power_norm(a)


def _power_norm(a: np.ndarray) -> float:
    h = a.conj().T @ a
    n = h.shape[0]
    # deterministic start with nonzero overlap against any eigenvector
    rng = np.random.default_rng(n)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(_POWER_MAX_ITER):
        w = h @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        lam_new = float(np.real(np.vdot(v, h @ v)))
        if abs(lam_new - lam) <= _POWER_TOL * max(lam_new, 1.0):
            lam = lam_new
            break
        lam = lam_new
    return float(np.sqrt(max(lam, 0.0)))


def singular_values(m) -> np.ndarray:
    return np.linalg.svd(as_complex_matrix(m), compute_uv=False)


def numerical_rank(m, tol: float = RANK_TOL) -> int:
    """Count of singular values above tol times the largest one."""
    if tol <= 0:
        raise ValidationError("tol must be positive")
    a = as_complex_matrix(m)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^ambient_dim given by an orthonormal column basis."""

    ambient_dim: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = as_complex_matrix(self.basis)
        if b.shape[0] != self.ambient_dim:
            raise DimensionMismatchError(
                f"basis rows {b.shape[0]} != ambient_dim {self.ambient_dim}"
            )
        gram = b.conj().T @ b
        if not np.allclose(gram, np.eye(b.shape[1]), atol=1e-10):
            raise ValidationError("basis columns are not orthonormal")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def project(self, v: np.ndarray) -> np.ndarray:
        """Orthogonal projection of an ambient vector onto the subspace."""
        return self.basis @ (self.basis.conj().T @ v)

    def coords(self, v: np.ndarray) -> np.ndarray:
        return self.basis.conj().T @ v

    def contains(self, v: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
        nv = np.linalg.norm(v)
        if nv == 0:
            return True
        return np.linalg.norm(self.project(v) - v) <= tol * nv


def column_space(m, tol: float = RANK_TOL) -> Subspace:
    """Orthonormal basis of the column space, via SVD."""
    a = as_complex_matrix(m)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if a.size == 0 or s[0] == 0.0:
        return Subspace(a.shape[0], np.zeros((a.shape[0], 0)))
    r = int(np.sum(s > tol * s[0]))
    return Subspace(a.shape[0], u[:, :r])


def quotient_space(
    ambient_dim: int, relations, tol: float = RANK_TOL
) -> tuple[int, np.ndarray, np.ndarray]:
    """Quotient of C^ambient_dim by the span of the relation vectors.

    Returns (dim, projector, section): the projector (dim x ambient) maps
    onto an orthonormal complement of the relation span, the section
    (ambient x dim) embeds it back, and projector @ section == identity.
    """
    rel = [np.asarray(r, dtype=complex).ravel() for r in relations]
    for r in rel:
        if r.shape[0] != ambient_dim:
            raise DimensionMismatchError(
                f"relation length {r.shape[0]} != ambient_dim {ambient_dim}"
            )
    if not rel:
        eye = np.eye(ambient_dim, dtype=complex)
        return ambient_dim, eye, eye
    a = np.stack(rel, axis=1)  # ambient x n_relations
    u, s, _ = np.linalg.svd(a, full_matrices=True)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    comp = u[:, rank:]
    projector = comp.conj().T
    section = comp
    return ambient_dim - rank, projector, section


def eig_signature(h, tol: float = 1e-9) -> tuple[int, int]:
    """(positive, negative) eigenvalue counts of a hermitian matrix."""
    a = as_complex_matrix(h)
    if not np.allclose(a, a.conj().T, atol=1e-10 * max(1.0, operator_norm(a))):
        raise ValidationError("matrix is not hermitian")
    w = np.linalg.eigvalsh(a)
    scale = max(np.max(np.abs(w)), 1.0) if w.size else 1.0
    pos = int(np.sum(w > tol * scale))
    neg = int(np.sum(w < -tol * scale))
    return pos, neg


def min_hermitian_eig(h) -> float:
    a = as_complex_matrix(h)
    return float(np.min(np.linalg.eigvalsh((a + a.conj().T) / 2)))


def is_psd(h, tol: float = 1e-9) -> bool:
    """Positive semidefinite up to a relative spectral slack."""
    a = as_complex_matrix(h)
    scale = max(operator_norm(a), 1.0)
    return min_hermitian_eig(a) >= -tol * scale


def random_complex(rng: np.random.Generator, *shape) -> np.ndarray:
    """I.i.d. complex standard normal entries."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
