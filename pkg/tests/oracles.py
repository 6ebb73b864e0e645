"""Independent reference computations used only by the tests."""
from __future__ import annotations

import math

import numpy as np


def eig_sym_2x2(a: np.ndarray) -> list[float]:
    """Roots of the characteristic quadratic of a symmetric 2x2 matrix."""
    p, q, r = a[0, 0], a[0, 1], a[1, 1]
    mid = (p + r) / 2
    rad = math.hypot((p - r) / 2, q)
    return [mid - rad, mid + rad]


def eig_sym_3x3(a: np.ndarray) -> list[float]:
    """Roots of the characteristic cubic, trigonometric form (three real roots)."""
    tr = a[0, 0] + a[1, 1] + a[2, 2]
    q = tr / 3
    b = a - q * np.eye(3)
    p2 = (b * b).sum() / 6
    if p2 == 0.0:
        return [q, q, q]
    p = math.sqrt(p2)
    det = (b[0, 0] * (b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1])
           - b[0, 1] * (b[1, 0] * b[2, 2] - b[1, 2] * b[2, 0])
           + b[0, 2] * (b[1, 0] * b[2, 1] - b[1, 1] * b[2, 0]))
    r = max(-1.0, min(1.0, det / (2 * p ** 3)))
    phi = math.acos(r) / 3
    e1 = q + 2 * p * math.cos(phi)
    e3 = q + 2 * p * math.cos(phi + 2 * math.pi / 3)
    return sorted([e1, 3 * q - e1 - e3, e3])


def grid_best_measurement(delta: np.ndarray, steps: int = 600) -> float:
    """Max over two-outcome projective measurements of tr(delta * Pi), 3x3 real case.

    Searches rank-one projectors u u^T over a (theta, phi) sphere grid and their
    rank-two complements; rank 0 and 3 are included via 0 and tr(delta).
    """
    theta = np.linspace(0.0, math.pi, steps)
    phi = np.linspace(0.0, 2 * math.pi, 2 * steps)
    t, f = np.meshgrid(theta, phi, indexing="ij")
    u = np.stack([np.sin(t) * np.cos(f), np.sin(t) * np.sin(f), np.cos(t)], axis=-1)
    quad = np.einsum("...i,ij,...j->...", u, delta, u)
    tr = float(np.trace(delta))
    return max(0.0, tr, float(quad.max()), float((tr - quad).max()))
