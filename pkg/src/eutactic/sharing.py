"""Coherent secret sharing over coordinate splits of a codebook.

A codebook holds orthonormal message states in ``R^m``. A split partitions
the coordinates among parties; each party receives the projection of every
codeword onto its coordinates. Only the coherent sum of all fragments
decodes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .frames import CoordinateProjector
from .linalg import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    Matrix,
    Vector,
    commutator,
    dyad,
    inner,
    is_zero,
    one,
    scalars_equal,
    trace_norm_sym,
    zero,
)
from .quadfield import BackendError

# Probabilities within this distance of 1 count as deterministic discrimination.
DETERMINISTIC_TOL = 1e-9


class CodebookError(ValueError):
    pass


class IncompleteShareError(ValueError):
    """The given shares do not cover every coordinate; the secret cannot be rebuilt."""


class AmbiguousStateError(ValueError):
    pass


@dataclass(frozen=True)
class Codebook:
    messages: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return self.messages[0].dim

    @property
    def size(self) -> int:
        return len(self.messages)

    @property
    def backend(self) -> str:
        return self.messages[0].backend

    def __len__(self) -> int:
        return len(self.messages)

    def to_float(self) -> Codebook:
        return Codebook(tuple(v.to_float() for v in self.messages))


def make_codebook(vectors: Sequence[Vector], tol: float = DEFAULT_TOL) -> Codebook:
    """Validate ``vectors`` as an orthonormal codebook of at least two messages."""
    vecs = tuple(vectors)
    if len(vecs) < 2:
        raise CodebookError("a codebook needs at least two messages")
    dims = {v.dim for v in vecs}
    if len(dims) != 1:
        raise CodebookError(f"codewords have differing dimensions {sorted(dims)}")
    if len({v.backend for v in vecs}) != 1:
        raise BackendError("codewords mix backends")
    if len(vecs) > vecs[0].dim:
        raise CodebookError(f"{len(vecs)} orthonormal codewords cannot fit in R^{vecs[0].dim}")
    be = vecs[0].backend
    for i, u in enumerate(vecs):
        for j in range(i, len(vecs)):
            v = vecs[j]
            if i != j and u.equals(v, tol):
                raise CodebookError(f"duplicate codeword: messages {i} and {j}")
            want = one(be) if i == j else zero(be)
            got = inner(u, v)
            if not scalars_equal(got, want, tol):
                raise CodebookError(
                    f"codewords {i} and {j} are not orthonormal: inner product {got}"
                )
    return Codebook(vecs)


def encode(message: int, book: Codebook) -> Vector:
    if not 0 <= message < book.size:
        raise IndexError(f"message {message} outside 0..{book.size - 1}")
    return book.messages[message]


@dataclass(frozen=True)
class ShareSplit:
    """Partition of the coordinates ``1..dim`` among parties (in order)."""

    dim: int
    parts: tuple[CoordinateProjector, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        seen: set[int] = set()
        for p in parts:
            if p.dim != self.dim:
                raise ValueError(f"part of dim {p.dim} in a split of dim {self.dim}")
            overlap = seen.intersection(p.kept)
            if overlap:
                raise ValueError(f"coordinates {sorted(overlap)} assigned twice")
            seen.update(p.kept)
        if seen != set(range(1, self.dim + 1)):
            missing = sorted(set(range(1, self.dim + 1)) - seen)
            raise ValueError(f"coordinates {missing} belong to no party")

    @classmethod
    def from_kept(cls, dim: int, kept_sets: Sequence[Sequence[int]]) -> ShareSplit:
        return cls(dim, tuple(CoordinateProjector(dim, tuple(k)) for k in kept_sets))


@dataclass(frozen=True)
class Share:
    party: int
    projector: CoordinateProjector
    fragments: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return self.projector.dim


def split(book: Codebook, parts: ShareSplit) -> list[Share]:
    if parts.dim != book.dim:
        raise ValueError(f"split of dim {parts.dim} for a codebook in R^{book.dim}")
    return [
        Share(s, p, tuple(p.apply(c) for c in book.messages))
        for s, p in enumerate(parts.parts, start=1)
    ]


def recombine(shares: Sequence[Share]) -> list[Vector]:
    """Coherently add the fragments of every message across all parties."""
    if not shares:
        raise IncompleteShareError("no shares given")
    dim = shares[0].dim
    k = len(shares[0].fragments)
    covered: set[int] = set()
    for sh in shares:
        if sh.dim != dim or len(sh.fragments) != k:
            raise ValueError("shares come from different splits")
        overlap = covered.intersection(sh.projector.kept)
        if overlap:
            raise ValueError(f"coordinates {sorted(overlap)} held by two shares")
        covered.update(sh.projector.kept)
    missing = sorted(set(range(1, dim + 1)) - covered)
    if missing:
        raise IncompleteShareError(f"coordinates {missing} are missing; cannot reconstruct")
    out = []
    for mu in range(k):
        total = shares[0].fragments[mu]
        for sh in shares[1:]:
            total = total + sh.fragments[mu]
        out.append(total)
    return out


def decode(state: Vector, book: Codebook, tol: float | None = None) -> int:
    """Index of the codeword that ``state`` coincides with (up to sign).

    The best overlap must carry all but a ``tol`` fraction of the state's
    squared norm and every other overlap at most a ``tol`` fraction. On the
    exact backend ``tol`` defaults to zero, elsewhere to ``DEFAULT_TOL``.
    """
    if state.dim != book.dim:
        raise ValueError(f"state dim {state.dim} vs codebook dim {book.dim}")
    if tol is None:
        tol = 0.0 if state.backend == EXACT else DEFAULT_TOL
    t = Fraction(tol) if state.backend == EXACT else float(tol)
    n2 = inner(state, state)
    if is_zero(n2, 0.0):
        raise AmbiguousStateError("zero state carries no message")
    sq = [inner(state, c) ** 2 for c in book.messages]
    order = sorted(range(len(sq)), key=lambda i: float(sq[i]), reverse=True)
    best = order[0]
    if sq[best] < (1 - t) * n2:
        raise AmbiguousStateError(
            f"best overlap^2 {float(sq[best]):.6g} below {float(1 - t):.6g} of the norm"
        )
    for other in order[1:]:
        if sq[other] > t * n2:
            raise AmbiguousStateError(
                f"messages {best} and {other} both overlap the state"
            )
    return best


@dataclass(frozen=True)
class CommeasurabilityResult:
    noncommeasurable: bool
    witness: Matrix | None
    pair: tuple[int, int] | None

    def __bool__(self) -> bool:
        return self.noncommeasurable


def noncommeasurability_check(share: Share, tol: float = DEFAULT_TOL) -> CommeasurabilityResult:
    """Look for two fragments whose dyads fail to commute."""
    nonzero = [i for i, f in enumerate(share.fragments) if not f.is_zero(tol)]
    if len(nonzero) < 2:
        raise ValueError("need at least two nonzero fragments")
    for a_pos, i in enumerate(nonzero):
        for j in nonzero[a_pos + 1:]:
            c = commutator(dyad(share.fragments[i]), dyad(share.fragments[j]))
            if not c.is_zero(tol):
                return CommeasurabilityResult(True, c, (i, j))
    return CommeasurabilityResult(False, None, None)


class LeakFlag(str, enum.Enum):
    DETERMINISTIC = "DETERMINISTIC"
    NO_LEAK = "NO_LEAK"
    PARTIAL = "PARTIAL"


@dataclass(frozen=True)
class PartyLeakage:
    party: int
    kept: tuple[int, ...]
    probabilities: dict[tuple[int, int], float]
    gram: tuple[tuple[float, ...], ...]
    flag: LeakFlag

    def max_probability(self) -> float:
        return max(self.probabilities.values(), default=0.5)


@dataclass(frozen=True)
class LeakageReport:
    priors: tuple[float, ...]
    parties: tuple[PartyLeakage, ...]

    def to_dict(self) -> dict:
        return {
            "priors": list(self.priors),
            "parties": [
                {
                    "party": p.party,
                    "kept": list(p.kept),
                    "flag": p.flag.value,
                    "pairs": [
                        {"messages": [mu, nu], "probability": prob}
                        for (mu, nu), prob in sorted(p.probabilities.items())
                    ],
                    "gram": [list(r) for r in p.gram],
                }
                for p in self.parties
            ],
        }


def padded_state(fragment: np.ndarray) -> np.ndarray:
    """Density matrix of a fragment plus a vacuum coordinate carrying the missing weight."""
    m = fragment.shape[0]
    rho = np.zeros((m + 1, m + 1))
    rho[:m, :m] = np.outer(fragment, fragment)
    rho[m, m] = 1.0 - float(fragment @ fragment)
    return rho


def helstrom_probability(rho: np.ndarray, sigma: np.ndarray, p: float = 0.5, q: float = 0.5) -> float:
    """Optimal success probability for telling ``rho`` (prior p) from ``sigma`` (prior q)."""
    p, q = p / (p + q), q / (p + q)
    prob = 0.5 + 0.5 * trace_norm_sym(p * rho - q * sigma)
    return min(1.0, max(0.5, prob))


def _check_priors(priors: Sequence[float] | None, k: int) -> tuple[float, ...]:
    if priors is None:
        return tuple([1.0 / k] * k)
    pr = tuple(float(p) for p in priors)
    if len(pr) != k:
        raise ValueError(f"{len(pr)} priors for {k} messages")
    if any(not math.isfinite(p) or p <= 0 for p in pr):
        raise ValueError("priors must be positive")
    if abs(sum(pr) - 1.0) > 1e-9:
        raise ValueError(f"priors sum to {sum(pr)}, not 1")
    return pr


def analyze_leakage(book: Codebook, parts: ShareSplit,
                    priors: Sequence[float] | None = None) -> LeakageReport:
    """Pairwise Helstrom discrimination of messages from each single share.

    Runs in floating point; an exact codebook is converted first. Particle
    absence is observable, so each party's conditional state is its fragment
    dyad padded with a vacuum coordinate.
    """
    pr = _check_priors(priors, book.size)
    fbook = book.to_float() if book.backend != FLOAT else book
    out = []
    for share in split(fbook, parts):
        frags = [f.to_numpy() for f in share.fragments]
        states = [padded_state(f) for f in frags]
        probs: dict[tuple[int, int], float] = {}
        flag_det = False
        flag_leak = False
        for mu in range(len(states)):
            for nu in range(mu + 1, len(states)):
                pp = helstrom_probability(states[mu], states[nu], pr[mu], pr[nu])
                probs[(mu, nu)] = pp
                guess = max(pr[mu], pr[nu]) / (pr[mu] + pr[nu])
                if pp >= 1.0 - DETERMINISTIC_TOL:
                    flag_det = True
                if pp > guess + DETERMINISTIC_TOL:
                    flag_leak = True
        if flag_det:
            flag = LeakFlag.DETERMINISTIC
        elif flag_leak:
            flag = LeakFlag.PARTIAL
        else:
            flag = LeakFlag.NO_LEAK
        gram = tuple(tuple(float(a @ b) for b in frags) for a in frags)
        out.append(PartyLeakage(share.party, share.projector.kept, probs, gram, flag))
    return LeakageReport(pr, tuple(out))
