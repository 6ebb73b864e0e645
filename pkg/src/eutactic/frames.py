"""Eutactic stars: projected orthonormal bases and their dilations."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    Matrix,
    Vector,
    dyad,
    inner,
    is_zero,
    one,
    scalars_equal,
    zero,
)
from .quadfield import BackendError

# Gram-Schmidt candidates with a residual norm below this are skipped.
DEPENDENCE_CUTOFF = 1e-8


class NotParsevalError(ValueError):
    pass


@dataclass(frozen=True)
class CoordinateProjector:
    """Diagonal 0/1 projector that keeps the 1-based coordinates in ``kept``."""

    dim: int
    kept: tuple[int, ...]

    def __post_init__(self) -> None:
        kept = tuple(sorted(set(self.kept)))
        if len(kept) != len(self.kept):
            raise ValueError(f"duplicate coordinates in {self.kept}")
        if any(not 1 <= k <= self.dim for k in kept):
            raise ValueError(f"coordinates {self.kept} outside 1..{self.dim}")
        object.__setattr__(self, "kept", kept)

    @classmethod
    def full(cls, dim: int) -> CoordinateProjector:
        return cls(dim, tuple(range(1, dim + 1)))

    @property
    def rank(self) -> int:
        return len(self.kept)

    def complement(self) -> CoordinateProjector:
        return CoordinateProjector(
            self.dim, tuple(k for k in range(1, self.dim + 1) if k not in self.kept)
        )

    def matrix(self, backend: str = EXACT) -> Matrix:
        return Matrix.diag([1 if i + 1 in self.kept else 0 for i in range(self.dim)], backend)

    def apply(self, v: Vector) -> Vector:
        """``P v`` in the ambient space (dropped coordinates set to zero)."""
        if v.dim != self.dim:
            raise ValueError(f"projector dim {self.dim} vs vector dim {v.dim}")
        z = zero(v.backend)
        return Vector([e if i + 1 in self.kept else z for i, e in enumerate(v)], v.backend)

    def restrict(self, v: Vector) -> Vector:
        """Coordinates of ``P v`` inside the kept subspace."""
        if v.dim != self.dim:
            raise ValueError(f"projector dim {self.dim} vs vector dim {v.dim}")
        return Vector([v[k - 1] for k in self.kept], v.backend)


@dataclass(frozen=True)
class OrthonormalBasis:
    vectors: tuple[Vector, ...]
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self) -> None:
        vecs = tuple(self.vectors)
        object.__setattr__(self, "vectors", vecs)
        m = len(vecs)
        if m == 0:
            raise ValueError("empty basis")
        if any(v.dim != m for v in vecs):
            raise ValueError("basis needs m vectors of dimension m")
        if len({v.backend for v in vecs}) > 1:
            raise BackendError("basis vectors mix backends")
        for i in range(m):
            for j in range(i, m):
                want = one(vecs[0].backend) if i == j else zero(vecs[0].backend)
                got = inner(vecs[i], vecs[j])
                if not scalars_equal(got, want, self.tol):
                    raise ValueError(
                        f"basis vectors {i + 1} and {j + 1} have inner product {got}"
                    )

    @classmethod
    def standard(cls, dim: int, backend: str = EXACT) -> OrthonormalBasis:
        return cls(tuple(Vector.basis(dim, i, backend) for i in range(1, dim + 1)))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def backend(self) -> str:
        return self.vectors[0].backend

    def matrix(self) -> Matrix:
        """Matrix whose columns are the basis vectors."""
        return Matrix.from_columns(list(self.vectors))


@dataclass(frozen=True)
class EutacticStar:
    """``m`` vectors in ``R^n``; no Parseval claim until checked."""

    ambient_dim: int
    vectors: tuple[Vector, ...]
    backend: str = EXACT

    def __post_init__(self) -> None:
        vecs = tuple(self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        for v in vecs:
            if v.dim != self.ambient_dim:
                raise ValueError(f"star vector of dim {v.dim} in R^{self.ambient_dim}")
            if v.backend != self.backend:
                raise BackendError("star vectors must share the star's backend")

    @property
    def source_dim(self) -> int:
        return len(self.vectors)

    def to_float(self) -> EutacticStar:
        return EutacticStar(self.ambient_dim, tuple(v.to_float() for v in self.vectors), FLOAT)


@dataclass(frozen=True)
class ParsevalReport:
    parseval: bool
    defect: float
    resolution: Matrix

    def __bool__(self) -> bool:
        return self.parseval


def resolution_of_identity(vectors: Sequence[Vector], dim: int | None = None,
                           backend: str | None = None) -> Matrix:
    """Sum of the dyads of ``vectors``; ``dim`` is needed for an empty list."""
    if not vectors:
        if dim is None:
            raise ValueError("dimension required for an empty vector list")
        return Matrix.zeros(dim, backend=backend or EXACT)
    n = vectors[0].dim
    if dim is not None and dim != n:
        raise ValueError(f"vectors have dim {n}, expected {dim}")
    total = dyad(vectors[0])
    for v in vectors[1:]:
        if v.dim != n:
            raise ValueError("vectors differ in dimension")
        total = total + dyad(v)
    return total


def _defect_matrix(star: EutacticStar) -> Matrix:
    res = resolution_of_identity(list(star.vectors), star.ambient_dim, star.backend)
    return res - Matrix.identity(star.ambient_dim, star.backend)


def eutacticity_defect(star: EutacticStar) -> float:
    """Frobenius norm of (sum of dyads - identity); zero iff Parseval."""
    return _defect_matrix(star).frobenius()


def is_parseval(star: EutacticStar, tol: float = DEFAULT_TOL) -> ParsevalReport:
    res = resolution_of_identity(list(star.vectors), star.ambient_dim, star.backend)
    diff = res - Matrix.identity(star.ambient_dim, star.backend)
    if star.backend == EXACT:
        ok = not diff.frobenius2()
    else:
        ok = diff.frobenius() < tol
    return ParsevalReport(ok, diff.frobenius(), res)


def project_basis(basis: OrthonormalBasis, proj: CoordinateProjector) -> EutacticStar:
    if proj.dim != basis.dim:
        raise ValueError(f"projector dim {proj.dim} vs basis dim {basis.dim}")
    return EutacticStar(
        proj.rank, tuple(proj.restrict(v) for v in basis.vectors), basis.backend
    )


def _sqrt(x, backend: str):
    if backend == EXACT:
        return x.sqrt()
    return math.sqrt(x)


def naimark_dilate(star: EutacticStar, tol: float = DEFAULT_TOL
                   ) -> tuple[OrthonormalBasis, CoordinateProjector]:
    """Lift a Parseval star in ``R^n`` to an orthonormal basis of ``R^m``.

    The star vectors are the columns of an ``n x m`` matrix with orthonormal
    rows. Those rows are completed to an orthogonal ``m x m`` matrix by
    Gram-Schmidt over the standard basis in index order, and the columns of
    the completed matrix form the basis. Keeping the first ``n`` coordinates
    recovers the star.

    On the exact backend each completion norm must be a square in Q(sqrt 2),
    otherwise :class:`NotRepresentableError` is raised.
    """
    report = is_parseval(star, tol)
    if not report:
        raise NotParsevalError(f"star is not Parseval (defect {report.defect:.3e})")
    n, m, be = star.ambient_dim, star.source_dim, star.backend
    rows = [Vector([v[i] for v in star.vectors], be) for i in range(n)]
    for k in range(1, m + 1):
        if len(rows) == m:
            break
        cand = Vector.basis(m, k, be)
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for r in rows:
                cand = cand - r.scale(inner(r, cand))
        nrm2 = inner(cand, cand)
        if is_zero(nrm2, DEPENDENCE_CUTOFF**2):
            continue
        rows.append(cand.scale(1 / _sqrt(nrm2, be)))
    if len(rows) != m:
        raise RuntimeError("failed to complete the row space")
    full = Matrix([r.entries for r in rows], be)
    basis = OrthonormalBasis(tuple(full.columns()), tol=max(tol, 1e-9) if be == FLOAT else tol)
    return basis, CoordinateProjector(m, tuple(range(1, n + 1)))


def is_sub_star(star: EutacticStar, tol: float = DEFAULT_TOL) -> bool:
    """True for vector systems whose resolution stays below identity (I - S is PSD)."""
    res = resolution_of_identity(list(star.vectors), star.ambient_dim, star.backend)
    gap = np.eye(star.ambient_dim) - res.to_numpy()
    return bool(np.linalg.eigvalsh(gap).min() >= -tol)
