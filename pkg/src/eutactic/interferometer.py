"""Plane-rotation circuits: beam-splitter meshes acting on ``m`` modes.

A circuit is an ordered list of gates; the first gate acts first, so the
circuit matrix is ``diag(signs) @ G_L @ ... @ G_1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    QUARTER_PI,
    Matrix,
    PiAngle,
    Vector,
    cos_sin,
    rotation_matrix,
)
from .quadfield import HALF_SQRT2, NotRepresentableError, QuadScalar

# Float decompose skips eliminations of entries this small.
ELIMINATION_FLOOR = 1e-15


class NotOrthogonalError(ValueError):
    pass


@dataclass(frozen=True)
class RotationGate:
    plane: tuple[int, int]
    angle: PiAngle | float

    def __post_init__(self) -> None:
        i, j = self.plane
        if not 1 <= i < j:
            raise ValueError(f"gate plane {self.plane} must satisfy 1 <= i < j")
        object.__setattr__(self, "plane", (int(i), int(j)))

    def inverse(self) -> RotationGate:
        return RotationGate(self.plane, -self.angle)

    def matrix(self, dim: int, backend: str = EXACT) -> Matrix:
        return rotation_matrix(dim, self.plane, self.angle, backend)

    @property
    def exact(self) -> bool:
        return isinstance(self.angle, PiAngle) and self.angle.eighths is not None


@dataclass(frozen=True)
class RotationCircuit:
    dim: int
    gates: tuple[RotationGate, ...] = ()
    signs: tuple[int, ...] | None = field(default=None)

    def __post_init__(self) -> None:
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        for g in gates:
            if g.plane[1] > self.dim:
                raise ValueError(f"gate plane {g.plane} outside dimension {self.dim}")
        if self.signs is not None:
            signs = tuple(int(s) for s in self.signs)
            if len(signs) != self.dim or any(s not in (1, -1) for s in signs):
                raise ValueError("sign layer needs one +1/-1 per mode")
            object.__setattr__(self, "signs", None if all(s == 1 for s in signs) else signs)

    @property
    def sign_layer(self) -> tuple[int, ...]:
        return self.signs if self.signs is not None else (1,) * self.dim

    def matrix(self, backend: str = EXACT) -> Matrix:
        # each gate only mixes two rows of the running product
        rows = [list(r) for r in Matrix.identity(self.dim, backend).rows]
        for g in self.gates:
            c, s = cos_sin(g.angle, backend)
            i, j = g.plane[0] - 1, g.plane[1] - 1
            ri, rj = rows[i], rows[j]
            rows[i] = [c * a + s * b for a, b in zip(ri, rj)]
            rows[j] = [-s * a + c * b for a, b in zip(ri, rj)]
        for k, sign in enumerate(self.sign_layer):
            if sign == -1:
                rows[k] = [-a for a in rows[k]]
        return Matrix(rows, backend)


def _apply_gate(entries: list, gate: RotationGate, backend: str) -> None:
    c, s = cos_sin(gate.angle, backend)
    i, j = gate.plane[0] - 1, gate.plane[1] - 1
    xi, xj = entries[i], entries[j]
    entries[i] = c * xi + s * xj
    entries[j] = -s * xi + c * xj


def apply_circuit(circuit: RotationCircuit, v: Vector) -> Vector:
    if v.dim != circuit.dim:
        raise ValueError(f"circuit of dim {circuit.dim} applied to dim {v.dim}")
    entries = list(v.entries)
    for g in circuit.gates:
        _apply_gate(entries, g, v.backend)
    if circuit.signs is not None:
        entries = [e if s == 1 else -e for e, s in zip(entries, circuit.signs)]
    return Vector(entries, v.backend)


def invert_circuit(circuit: RotationCircuit) -> RotationCircuit:
    """Reverse mixings in reverse order; the sign layer (its own inverse) goes first."""
    gates = tuple(g.inverse() for g in reversed(circuit.gates))
    if circuit.signs is None:
        return RotationCircuit(circuit.dim, gates)
    # D G = G' D with G' the gate conjugated by D: flip its angle when the plane's signs differ
    signs = circuit.signs
    moved = []
    for g in gates:
        i, j = g.plane
        moved.append(g if signs[i - 1] == signs[j - 1] else RotationGate(g.plane, -g.angle))
    return RotationCircuit(circuit.dim, tuple(moved), signs)


def paper_encoder() -> RotationCircuit:
    """Four 50:50 mixers in R^4: planes 1-3, 1-4, 1-2, 1-3 at pi/4, in box order."""
    return RotationCircuit(
        4, tuple(RotationGate(p, QUARTER_PI) for p in [(1, 3), (1, 4), (1, 2), (1, 3)])
    )


def _exact_angle(a: QuadScalar, b: QuadScalar) -> PiAngle:
    """Angle of the direction (a, b) when it is a multiple of pi/4."""
    h = HALF_SQRT2
    one, zero = QuadScalar(1), QuadScalar(0)
    units = [(one, zero), (h, h), (zero, one), (-h, h), (-one, zero), (-h, -h), (zero, -one), (h, -h)]
    for k, (c, s) in enumerate(units):
        # parallel and same orientation
        if a * s == b * c and (a * c + b * s).sign() > 0:
            return PiAngle(Fraction(k, 4) if k <= 4 else Fraction(k - 8, 4))
    raise NotRepresentableError(
        f"Givens angle of ({a}, {b}) is not a multiple of pi/4; use the float backend"
    )


def decompose(q: Matrix, tol: float = DEFAULT_TOL) -> RotationCircuit:
    """Synthesize an orthogonal matrix as plane rotations plus a sign layer.

    Givens elimination runs on ``Q^T`` column by column: entry ``(j, c)`` is
    zeroed with a rotation in plane ``(c, j)``. The resulting
    ``G_K ... G_1 Q^T = D`` gives ``Q = D G_K ... G_1``.
    """
    if not q.is_square:
        raise NotOrthogonalError("decompose needs a square matrix")
    backend = q.backend
    if not q.is_orthogonal(tol):
        raise NotOrthogonalError("matrix is not orthogonal")
    n = q.shape[0]
    a = [list(r) for r in q.T.rows]
    gates = []
    for c in range(n - 1):
        for j in range(c + 1, n):
            x, y = a[c][c], a[j][c]
            if backend == EXACT:
                if not y:
                    continue
                theta = _exact_angle(x, y)
            else:
                if abs(y) <= ELIMINATION_FLOOR:
                    continue
                theta = math.atan2(y, x)
            cs, sn = cos_sin(theta, backend)
            row_c, row_j = a[c], a[j]
            a[c] = [cs * u + sn * w for u, w in zip(row_c, row_j)]
            a[j] = [-sn * u + cs * w for u, w in zip(row_c, row_j)]
            gates.append(RotationGate((c + 1, j + 1), theta))
    signs = []
    for i in range(n):
        d = a[i][i]
        signs.append(1 if float(d) > 0 else -1)
    return RotationCircuit(n, tuple(gates), tuple(signs))


def reconstruction_residual(circuit: RotationCircuit, q: Matrix) -> float:
    """Frobenius distance between the circuit matrix and ``q`` (float)."""
    return (circuit.matrix(FLOAT) - q.to_float()).frobenius()
