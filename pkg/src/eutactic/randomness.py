"""Seeded pseudo-random test objects.

All randomness comes from numpy's PCG64 generator. A run seed and a trial
index are mixed through ``SeedSequence`` so every trial has its own stream
and results do not depend on execution order.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .interferometer import RotationCircuit, RotationGate
from .linalg import PiAngle


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """PCG64 stream for one trial, derived from the run seed and the trial index."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_orthogonal(rng: np.random.Generator, m: int) -> np.ndarray:
    """Gram-Schmidt on a Gaussian grid; first nonzero entry of each column made positive."""
    while True:
        a = rng.standard_normal((m, m))
        q = np.zeros((m, m))
        ok = True
        for j in range(m):
            v = a[:, j].copy()
            for _ in range(2):
                v -= q[:, :j] @ (q[:, :j].T @ v)
            nrm = np.linalg.norm(v)
            if nrm < 1e-8:
                ok = False
                break
            v /= nrm
            lead = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
            q[:, j] = v if lead > 0 else -v
        if ok:
            return q


def random_exact_circuit(rng: np.random.Generator, m: int, n_gates: int) -> RotationCircuit:
    gates = []
    for _ in range(n_gates):
        i, j = sorted(rng.choice(m, size=2, replace=False) + 1)
        k = int(rng.integers(1, 8))
        gates.append(RotationGate((int(i), int(j)), PiAngle(Fraction(k, 4))))
    return RotationCircuit(m, tuple(gates))
