"""The worked two-share example in exact arithmetic.

Party 1 holds coordinates 1-2 (fragments ``y``, ``z``), party 2 holds
coordinates 3-4 (fragments ``w``, ``x``). The codewords are ``w + y`` and
``x + z``; two further "quadrit" states complete an orthonormal basis of
``R^4``.
"""
from __future__ import annotations

from fractions import Fraction as F

from .linalg import EXACT, Matrix, Vector
from .quadfield import QuadScalar as Q
from .sharing import ShareSplit

S2 = Q(0, 1)  # sqrt 2
INV_S2 = Q(0, F(1, 2))  # 1/sqrt 2


def _v(*entries) -> Vector:
    return Vector(entries, EXACT)


def share_w() -> Vector:
    return _v(0, 0, Q(0, F(-1, 4)), INV_S2)


def share_x() -> Vector:
    return _v(0, 0, F(-3, 4), F(-1, 2))


def share_y() -> Vector:
    return _v(Q(0, F(1, 4)), F(-1, 2), 0, 0)


def share_z() -> Vector:
    return _v(F(-1, 4), Q(0, F(-1, 4)), 0, 0)


def codeword_wy() -> Vector:
    """``w + y`` as given: (1/2)(1/sqrt2, -1, -1/sqrt2, sqrt2)."""
    h = F(1, 2)
    return _v(INV_S2 * h, -h, -INV_S2 * h, S2 * h)


def codeword_xz() -> Vector:
    """``x + z`` as given: (1/2)(-1/2, -1/sqrt2, -3/2, -1)."""
    h = F(1, 2)
    return _v(F(-1, 4), -INV_S2 * h, F(-3, 4), -h)


def quadrit_3() -> Vector:
    return _v(F(1, 2), Q(0, F(1, 2)), F(-1, 2), 0)


def quadrit_4() -> Vector:
    return _v(F(3, 4), Q(0, F(-1, 4)), F(1, 4), F(-1, 2))


def bit_codewords() -> list[Vector]:
    return [codeword_wy(), codeword_xz()]


def quadrit_codewords() -> list[Vector]:
    return [codeword_wy(), codeword_xz(), quadrit_3(), quadrit_4()]


def paper_split() -> ShareSplit:
    return ShareSplit.from_kept(4, [(1, 2), (3, 4)])


def _rows(scale, rows) -> Matrix:
    return Matrix([[scale * Q.coerce(e) for e in r]
                   for r in rows], EXACT)


def projector_wy() -> Matrix:
    """The reference 4x4 projector onto ``w + y``."""
    r2 = INV_S2  # 1/sqrt2
    return _rows(F(1, 4), [
        [F(1, 2), -r2, F(-1, 2), 1],
        [-r2, 1, r2, -S2],
        [F(-1, 2), r2, F(1, 2), -1],
        [1, -S2, -1, 2],
    ])


def projector_xz() -> Matrix:
    """The reference 4x4 projector onto ``x + z``."""
    r = Q(0, F(1, 4))  # 1/(2 sqrt2)
    return _rows(F(1, 4), [
        [F(1, 4), r, F(3, 4), F(1, 2)],
        [r, F(1, 2), 3 * r, INV_S2],
        [F(3, 4), 3 * r, F(9, 4), F(3, 2)],
        [F(1, 2), INV_S2, F(3, 2), 1],
    ])


def worst_case_basis() -> list[Vector]:
    return [_v(0, 0, 1), _v(0, 1, 0), _v(1, 0, 0)]


def worst_case_split() -> ShareSplit:
    """Projection along the z-axis: party 1 keeps coordinate 3."""
    return ShareSplit.from_kept(3, [(3,), (1, 2)])
