"""Small dense vectors and matrices over an exact or a float backend.

The exact backend stores :class:`QuadScalar` entries and compares with zero
tolerance. The float backend stores Python floats and compares with an
absolute tolerance (``DEFAULT_TOL`` unless overridden). Values never mix
backends; use :meth:`Vector.to_float` / :meth:`Matrix.to_float` to convert
explicitly.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .quadfield import (
    HALF_SQRT2,
    BackendError,
    NotRepresentableError,
    QuadScalar,
)

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

DEFAULT_TOL = 1e-10
JACOBI_TOL = 1e-12


def scalar_backend(x) -> str:
    if isinstance(x, QuadScalar):
        return EXACT
    if isinstance(x, float):
        return FLOAT
    raise BackendError(f"not a backend scalar: {x!r}")


def to_scalar(x, backend: str):
    """Coerce ``x`` onto ``backend``; floats never become exact."""
    if backend == EXACT:
        if isinstance(x, (float, np.floating)):
            raise BackendError("float value on the exact backend")
        return QuadScalar.coerce(x)
    if backend == FLOAT:
        if isinstance(x, QuadScalar):
            raise BackendError("exact value on the float backend; convert explicitly")
        if isinstance(x, (int, float, Rational, np.floating, np.integer)):
            return float(x)
        raise TypeError(f"cannot use {x!r} as a float scalar")
    raise ValueError(f"unknown backend {backend!r}")


def zero(backend: str):
    return QuadScalar(0) if backend == EXACT else 0.0


def one(backend: str):
    return QuadScalar(1) if backend == EXACT else 1.0


def is_zero(x, tol: float = DEFAULT_TOL) -> bool:
    if isinstance(x, QuadScalar):
        return not x
    return abs(x) <= tol


def scalars_equal(x, y, tol: float = DEFAULT_TOL) -> bool:
    if scalar_backend(x) != scalar_backend(y):
        raise BackendError("cannot compare scalars across backends")
    return is_zero(x - y, tol)


def scalar_ops(x, y=None, op: str = "add"):
    """Field operation dispatcher: ``add``, ``mul``, ``neg``, ``inv``, ``eq``."""
    if y is not None and scalar_backend(x) != scalar_backend(y):
        raise BackendError("operands live on different backends")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        if is_zero(x, 0.0):
            raise ZeroDivisionError("inverse of zero")
        return x.inverse() if isinstance(x, QuadScalar) else 1.0 / x
    if op == "eq":
        return scalars_equal(x, y)
    raise ValueError(f"unknown op {op!r}")


def _common_backend(entries: Sequence, backend: str | None) -> str:
    if backend is not None:
        return backend
    found = {scalar_backend(e) for e in entries if not _is_plain_rational(e)}
    if len(found) > 1:
        raise BackendError("entries mix exact and float scalars")
    if found:
        return found.pop()
    return EXACT


def _is_plain_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


class Vector:
    """Immutable column vector."""

    __slots__ = ("entries", "backend")

    def __init__(self, entries: Iterable, backend: str | None = None) -> None:
        raw = list(entries)
        if not raw:
            raise ValueError("vector needs at least one entry")
        be = _common_backend(raw, backend)
        object.__setattr__(self, "entries", tuple(to_scalar(e, be) for e in raw))
        object.__setattr__(self, "backend", be)

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @classmethod
    def zeros(cls, dim: int, backend: str = EXACT) -> Vector:
        return cls([0] * dim, backend)

    @classmethod
    def basis(cls, dim: int, index: int, backend: str = EXACT) -> Vector:
        """Standard basis vector with a one at 1-based ``index``."""
        if not 1 <= index <= dim:
            raise IndexError(f"basis index {index} outside 1..{dim}")
        return cls([1 if i == index - 1 else 0 for i in range(dim)], backend)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self) -> str:
        return f"Vector({[str(e) for e in self.entries]}, {self.backend!r})"

    def _check(self, other: Vector) -> None:
        if not isinstance(other, Vector):
            raise TypeError("expected a Vector")
        if other.backend != self.backend:
            raise BackendError("vectors live on different backends")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector([a + b for a, b in zip(self, other)], self.backend)

    def __sub__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector([a - b for a, b in zip(self, other)], self.backend)

    def __neg__(self) -> Vector:
        return Vector([-a for a in self], self.backend)

    def scale(self, c) -> Vector:
        c = to_scalar(c, self.backend)
        return Vector([c * a for a in self], self.backend)

    def norm2(self):
        return inner(self, self)

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return all(is_zero(e, tol) for e in self)

    def equals(self, other: Vector, tol: float = DEFAULT_TOL) -> bool:
        self._check(other)
        return all(scalars_equal(a, b, tol) for a, b in zip(self, other))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return (
            self.backend == other.backend
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.backend, self.entries))

    def to_float(self) -> Vector:
        return Vector([float(e) for e in self], FLOAT)

    def to_numpy(self) -> np.ndarray:
        return np.array([float(e) for e in self], dtype=float)


class Matrix:
    """Immutable dense matrix, stored row-major."""

    __slots__ = ("rows", "backend")

    def __init__(self, rows: Iterable[Iterable], backend: str | None = None) -> None:
        raw = [list(r) for r in rows]
        if not raw or not raw[0]:
            raise ValueError("matrix needs at least one row and column")
        width = len(raw[0])
        if any(len(r) != width for r in raw):
            raise ValueError("ragged matrix rows")
        be = _common_backend([e for r in raw for e in r], backend)
        object.__setattr__(
            self, "rows", tuple(tuple(to_scalar(e, be) for e in r) for r in raw)
        )
        object.__setattr__(self, "backend", be)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int, backend: str = EXACT) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], backend)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, backend: str = EXACT) -> Matrix:
        return cls([[0] * (n if m is None else m) for _ in range(n)], backend)

    @classmethod
    def diag(cls, values: Sequence, backend: str | None = None) -> Matrix:
        n = len(values)
        be = _common_backend(list(values), backend)
        z = zero(be)
        return cls([[values[i] if i == j else z for j in range(n)] for i in range(n)], be)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector]) -> Matrix:
        be = columns[0].backend
        return cls([[c[i] for c in columns] for i in range(columns[0].dim)], be)

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> Matrix:
        return cls([[float(x) for x in row] for row in np.asarray(arr, dtype=float)], FLOAT)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self) -> str:
        body = [[str(e) for e in r] for r in self.rows]
        return f"Matrix({body}, {self.backend!r})"

    def row(self, i: int) -> Vector:
        return Vector(self.rows[i], self.backend)

    def column(self, j: int) -> Vector:
        return Vector([r[j] for r in self.rows], self.backend)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.shape[1])]

    def _check_same(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.backend != self.backend:
            raise BackendError("matrices live on different backends")
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.backend,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.backend,
        )

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows], self.backend)

    def scale(self, c) -> Matrix:
        c = to_scalar(c, self.backend)
        return Matrix([[c * a for a in r] for r in self.rows], self.backend)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            if other.backend != self.backend:
                raise BackendError("matrix and vector live on different backends")
            if other.dim != self.shape[1]:
                raise ValueError(f"cannot apply {self.shape} matrix to dim {other.dim}")
            return Vector([_dot(r, other.entries, self.backend) for r in self.rows], self.backend)
        if isinstance(other, Matrix):
            if other.backend != self.backend:
                raise BackendError("matrices live on different backends")
            if other.shape[0] != self.shape[1]:
                raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows))
            return Matrix(
                [[_dot(r, c, self.backend) for c in cols] for r in self.rows], self.backend
            )
        return NotImplemented

    @property
    def T(self) -> Matrix:
        return Matrix(list(zip(*self.rows)), self.backend)

    def trace(self):
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        total = zero(self.backend)
        for i in range(self.shape[0]):
            total = total + self.rows[i][i]
        return total

    def frobenius2(self):
        """Squared Frobenius norm, exact on the exact backend."""
        total = zero(self.backend)
        for r in self.rows:
            for a in r:
                total = total + a * a
        return total

    def frobenius(self) -> float:
        return math.sqrt(float(self.frobenius2()))

    def is_symmetric(self, tol: float = DEFAULT_TOL) -> bool:
        if not self.is_square:
            return False
        n = self.shape[0]
        return all(
            scalars_equal(self.rows[i][j], self.rows[j][i], tol)
            for i in range(n)
            for j in range(i + 1, n)
        )

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return all(is_zero(a, tol) for r in self.rows for a in r)

    def equals(self, other: Matrix, tol: float = DEFAULT_TOL) -> bool:
        self._check_same(other)
        return all(
            scalars_equal(a, b, tol)
            for r, s in zip(self.rows, other.rows)
            for a, b in zip(r, s)
        )

    def is_orthogonal(self, tol: float = DEFAULT_TOL) -> bool:
        if not self.is_square:
            return False
        return (self.T @ self).equals(Matrix.identity(self.shape[0], self.backend), tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.backend == other.backend and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.backend, self.rows))

    def to_float(self) -> Matrix:
        return Matrix([[float(a) for a in r] for r in self.rows], FLOAT)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(a) for a in r] for r in self.rows], dtype=float)


def _dot(u: Sequence, v: Sequence, backend: str):
    total = zero(backend)
    for a, b in zip(u, v):
        total = total + a * b
    return total


def inner(u: Vector, v: Vector):
    """Real scalar product."""
    u._check(v)
    return _dot(u.entries, v.entries, u.backend)


def dyad(v: Vector) -> Matrix:
    """Rank-one projector-like matrix ``v v^T``."""
    e = v.entries
    return Matrix([[a * b for b in e] for a in e], v.backend)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    if not a.is_square:
        raise ValueError("commutator needs square matrices")
    a._check_same(b)
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# Angles and plane rotations
# ---------------------------------------------------------------------------


class PiAngle:
    """An angle stored exactly as a rational multiple of pi."""

    __slots__ = ("coef",)

    def __init__(self, coef) -> None:
        object.__setattr__(self, "coef", Fraction(coef))

    def __setattr__(self, name, value):
        raise AttributeError("PiAngle is immutable")

    @property
    def radians(self) -> float:
        return float(self.coef) * math.pi

    def __float__(self) -> float:
        return self.radians

    def __neg__(self) -> PiAngle:
        return PiAngle(-self.coef)

    def __eq__(self, other) -> bool:
        return isinstance(other, PiAngle) and self.coef == other.coef

    def __hash__(self) -> int:
        return hash(("pi", self.coef))

    def __repr__(self) -> str:
        return f"PiAngle({self.coef})"

    @property
    def eighths(self) -> int | None:
        """Octant index k with angle = k*pi/4, or None if not such a multiple."""
        k = self.coef * 4
        return int(k) if k.denominator == 1 else None


QUARTER_PI = PiAngle(Fraction(1, 4))


def _exact_cos_sin(k: int) -> tuple[QuadScalar, QuadScalar]:
    h = HALF_SQRT2
    table = {
        0: (QuadScalar(1), QuadScalar(0)),
        1: (h, h),
        2: (QuadScalar(0), QuadScalar(1)),
        3: (-h, h),
        4: (QuadScalar(-1), QuadScalar(0)),
        5: (-h, -h),
        6: (QuadScalar(0), QuadScalar(-1)),
        7: (h, -h),
    }
    return table[k % 8]


def cos_sin(theta, backend: str):
    """Cosine and sine of ``theta`` (PiAngle or float radians) on ``backend``."""
    if backend == EXACT:
        if isinstance(theta, PiAngle) and theta.eighths is not None:
            return _exact_cos_sin(theta.eighths)
        if isinstance(theta, (int, Fraction)) and theta == 0:
            return QuadScalar(1), QuadScalar(0)
        raise NotRepresentableError(
            f"angle {theta!r} is not a multiple of pi/4; use the float backend"
        )
    rad = theta.radians if isinstance(theta, PiAngle) else float(theta)
    return math.cos(rad), math.sin(rad)


def rotation_matrix(dim: int, plane: tuple[int, int], theta, backend: str = EXACT) -> Matrix:
    """Plane rotation in 1-based coordinates ``(i, j)``, ``i < j``.

    Acting on a column vector: ``x_i' = c x_i + s x_j``, ``x_j' = -s x_i + c x_j``.
    """
    i, j = plane
    if not 1 <= i < j <= dim:
        raise ValueError(f"invalid plane {plane} for dimension {dim}")
    c, s = cos_sin(theta, backend)
    rows = [[one(backend) if r == k else zero(backend) for k in range(dim)] for r in range(dim)]
    i0, j0 = i - 1, j - 1
    rows[i0][i0] = c
    rows[i0][j0] = s
    rows[j0][i0] = -s
    rows[j0][j0] = c
    return Matrix(rows, backend)


# ---------------------------------------------------------------------------
# Symmetric eigenvalues
# ---------------------------------------------------------------------------


def jacobi_eigenvalues(a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps.

    Sweeps stop once the off-diagonal Frobenius norm drops below ``tol``
    (scaled by the matrix norm when that exceeds one).
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(a.diagonal())))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # a <- J^T a J with J the (p, q) rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return a.diagonal().copy()


def trace_norm_sym(a: Matrix | np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Sum of absolute eigenvalues of a symmetric float matrix."""
    if isinstance(a, Matrix):
        if a.backend != FLOAT:
            raise BackendError("trace_norm_sym runs on the float backend")
        arr = a.to_numpy()
    else:
        arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("trace_norm_sym needs a square matrix")
    if not np.allclose(arr, arr.T, rtol=0.0, atol=tol):
        raise ValueError("trace_norm_sym needs a symmetric matrix")
    arr = 0.5 * (arr + arr.T)
    return float(np.sum(np.abs(jacobi_eigenvalues(arr))))
