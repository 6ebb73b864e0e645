"""Acceptance suite: one test per criterion, summarized at the end of the run.

Run alone with ``pytest tests/test_acceptance.py -v``; the terminal summary
prints one ``criterion N: PASS|FAIL`` line per criterion.
"""
import math
import time

import numpy as np
import pytest

from eutactic import paper
from eutactic.cli import main
from eutactic.frames import (
    CoordinateProjector,
    EutacticStar,
    OrthonormalBasis,
    is_parseval,
    naimark_dilate,
    project_basis,
)
from eutactic.interferometer import (
    apply_circuit,
    decompose,
    invert_circuit,
    paper_encoder,
    reconstruction_residual,
)
from eutactic.linalg import EXACT, FLOAT, Matrix, Vector, commutator, dyad, inner, trace_norm_sym
from eutactic.randomness import random_exact_circuit, random_orthogonal, trial_rng
from eutactic.sharing import (
    LeakFlag,
    ShareSplit,
    analyze_leakage,
    decode,
    encode,
    helstrom_probability,
    make_codebook,
    padded_state,
    recombine,
    split,
)
from eutactic.verify import run_checks

from oracles import eig_sym_2x2, eig_sym_3x3, grid_best_measurement

CASES = 200
SEED = 20031


@pytest.mark.criterion(1, "exact recombination of the shares into the codewords")
def test_exact_recombination():
    assert paper.share_w() + paper.share_y() == paper.codeword_wy()
    assert paper.share_x() + paper.share_z() == paper.codeword_xz()
    shares = split(make_codebook(paper.bit_codewords()), paper.paper_split())
    assert recombine(shares) == [paper.codeword_wy(), paper.codeword_xz()]


@pytest.mark.criterion(2, "quadrit codebook Gram matrix is the identity")
def test_orthonormality():
    words = paper.quadrit_codewords()
    gram = Matrix([[inner(a, b) for b in words] for a in words])
    assert gram == Matrix.identity(4)


@pytest.mark.criterion(3, "codeword dyads equal the reference projectors")
def test_projector_matrices():
    assert dyad(paper.codeword_wy()) == paper.projector_wy()
    assert dyad(paper.codeword_xz()) == paper.projector_xz()


@pytest.mark.criterion(4, "share dyads do not commute for either party")
def test_noncommeasurability():
    for a, b in [(paper.share_w(), paper.share_x()), (paper.share_y(), paper.share_z())]:
        c = commutator(dyad(a), dyad(b))
        assert c.frobenius2() > 0


@pytest.mark.criterion(5, "quadrit projections Parseval with zero defect; two-vector sub-stars are not")
def test_eutacticity():
    basis = OrthonormalBasis(tuple(paper.quadrit_codewords()))
    for kept in [(1, 2), (3, 4)]:
        rep = is_parseval(project_basis(basis, CoordinateProjector(4, kept)))
        assert rep.parseval and rep.defect == 0.0
    p12, p34 = CoordinateProjector(4, (1, 2)), CoordinateProjector(4, (3, 4))
    wx = EutacticStar(2, (p34.restrict(paper.share_w()), p34.restrict(paper.share_x())))
    yz = EutacticStar(2, (p12.restrict(paper.share_y()), p12.restrict(paper.share_z())))
    for star in (wx, yz):
        rep = is_parseval(star)
        assert not rep.parseval and rep.defect > 0


@pytest.mark.criterion(6, "encoder maps e1, e2 to the codewords; decoder inverts it exactly")
def test_circuit():
    enc = paper_encoder()
    assert apply_circuit(enc, Vector([0, 0, 0, 1])) == paper.codeword_wy()
    assert apply_circuit(enc, Vector([1, 0, 0, 0])) == paper.codeword_xz()
    assert invert_circuit(enc).matrix() @ enc.matrix() == Matrix.identity(4)


@pytest.mark.criterion(7, "worst-case split is flagged DETERMINISTIC")
def test_worst_case():
    rep = analyze_leakage(make_codebook(paper.worst_case_basis()), paper.worst_case_split())
    first = rep.parties[0]
    assert first.flag is LeakFlag.DETERMINISTIC
    assert abs(first.probabilities[(0, 1)] - 1.0) <= 1e-9
    assert abs(first.probabilities[(0, 2)] - 1.0) <= 1e-9


@pytest.mark.criterion(8, "worked-example shares leak partially; Helstrom matches the measurement grid")
def test_partial_leakage():
    book = make_codebook(paper.bit_codewords())
    rep = analyze_leakage(book, paper.paper_split())
    start = time.perf_counter()
    for party, share in zip(rep.parties, split(book.to_float(), paper.paper_split())):
        assert party.flag is LeakFlag.PARTIAL
        kept = [k - 1 for k in share.projector.kept]
        f0, f1 = (f.to_numpy()[kept] for f in share.fragments)
        # conditional states live on the two kept coordinates plus vacuum
        delta = 0.5 * padded_state(f0) - 0.5 * padded_state(f1)
        oracle = 0.5 + grid_best_measurement(delta)
        for prob in party.probabilities.values():
            assert 0.5 < prob < 1.0
            assert abs(prob - oracle) <= 1e-4
        assert abs(helstrom_probability(padded_state(f0), padded_state(f1)) - oracle) <= 1e-4
    assert time.perf_counter() - start < 10.0


def _float_basis(q: np.ndarray) -> OrthonormalBasis:
    return OrthonormalBasis(tuple(Vector(list(c), FLOAT) for c in q.T))


def _dims(rng, low=2, high=12):
    return int(rng.integers(low, high + 1))


@pytest.mark.criterion(9, "randomized property suites (>= 200 cases each, dims <= 12)")
def test_property_suites():
    start = time.perf_counter()

    # project_basis is always Parseval
    for t in range(CASES):
        rng = trial_rng(SEED, t)
        m = _dims(rng)
        n = int(rng.integers(1, m + 1))
        kept = tuple(int(k) + 1 for k in rng.choice(m, n, replace=False))
        star = project_basis(_float_basis(random_orthogonal(rng, m)), CoordinateProjector(m, kept))
        assert is_parseval(star, 1e-10), f"case {t}"

    # naimark_dilate round trip
    for t in range(CASES):
        rng = trial_rng(SEED + 1, t)
        m = _dims(rng)
        n = int(rng.integers(1, m))
        q = random_orthogonal(rng, m)
        star = project_basis(_float_basis(q), CoordinateProjector(m, tuple(range(1, n + 1))))
        lifted, proj = naimark_dilate(star)
        back = project_basis(lifted, proj)
        err = max(float(np.abs(a.to_numpy() - b.to_numpy()).max())
                  for a, b in zip(back.vectors, star.vectors))
        assert err <= 1e-10, f"case {t}: {err}"

    # decompose reconstruction
    for t in range(CASES):
        rng = trial_rng(SEED + 2, t)
        m = _dims(rng)
        q = Matrix.from_numpy(random_orthogonal(rng, m))
        assert reconstruction_residual(decompose(q), q) <= 1e-10, f"case {t}"

    # exact encode -> split -> recombine -> decode
    failures = 0
    for t in range(CASES):
        rng = trial_rng(SEED + 3, t)
        m = _dims(rng)
        k = int(rng.integers(2, m + 1))
        mat = random_exact_circuit(rng, m, 2 * m).matrix(EXACT)
        cols = rng.permutation(m)[:k]
        book = make_codebook([mat.column(int(c)) for c in cols])
        perm = [int(c) + 1 for c in rng.permutation(m)]
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, m), int(rng.integers(1, m)), replace=False))
        kept_sets = [perm[a:b] for a, b in zip([0] + cuts, cuts + [m])]
        back = recombine(split(book, ShareSplit.from_kept(m, kept_sets)))
        for mu in range(k):
            if back[mu] != encode(mu, book) or decode(back[mu], book) != mu:
                failures += 1
    assert failures == 0

    # trace norm against characteristic-polynomial roots
    for t in range(CASES):
        rng = trial_rng(SEED + 4, t)
        for n, oracle in [(2, eig_sym_2x2), (3, eig_sym_3x3)]:
            a = rng.standard_normal((n, n))
            a = a + a.T
            want = sum(abs(x) for x in oracle(a))
            assert math.isclose(trace_norm_sym(a), want, abs_tol=1e-9), f"case {t}, n={n}"

    assert time.perf_counter() - start < 60.0


def _max_diff(a, b) -> float:
    if isinstance(a, dict):
        assert a.keys() == b.keys()
        return max((_max_diff(a[k], b[k]) for k in a), default=0.0)
    if isinstance(a, list):
        assert len(a) == len(b)
        return max((_max_diff(x, y) for x, y in zip(a, b)), default=0.0)
    return abs(float(a) - float(b))


@pytest.mark.criterion(10, "verify-paper exits 0; exact and float backends agree within 1e-10")
def test_verify_paper(capsys):
    assert main(["verify-paper"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    exact = run_checks(EXACT)
    flt = run_checks(FLOAT, 1e-10)
    assert all(r.passed for r in exact) and all(r.passed for r in flt)
    names = {"recombination", "orthonormality", "projectors", "noncommeasurability",
             "parseval", "circuit", "worst-case"}
    assert names <= {r.name for r in exact}
    for e, f in zip(exact, flt):
        assert e.name == f.name
        assert _max_diff(e.values, f.values) <= 1e-10, e.name
