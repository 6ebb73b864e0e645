import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eutactic import paper
from eutactic.linalg import (
    EXACT,
    FLOAT,
    QUARTER_PI,
    Matrix,
    PiAngle,
    Vector,
    commutator,
    dyad,
    inner,
    jacobi_eigenvalues,
    rotation_matrix,
    trace_norm_sym,
)
from eutactic.quadfield import BackendError, NotRepresentableError, QuadScalar as Q

from oracles import eig_sym_2x2, eig_sym_3x3

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
quads = st.builds(Q, small_rationals, small_rationals)


def exact_vectors(dim):
    return st.lists(quads, min_size=dim, max_size=dim).map(lambda xs: Vector(xs, EXACT))


def test_inner_of_codewords_is_zero():
    assert inner(paper.codeword_wy(), paper.codeword_xz()) == 0


def test_inner_of_codeword_with_itself_is_one():
    # exact sum of squares: (1/8 + 1/4 + 1/8 + 1/2)
    assert inner(paper.codeword_wy(), paper.codeword_wy()) == 1


def test_inner_standard_basis():
    assert inner(Vector.basis(3, 1), Vector.basis(3, 2)) == 0


def test_inner_dimension_mismatch():
    with pytest.raises(ValueError):
        inner(Vector([1, 2]), Vector([1, 2, 3]))


def test_inner_backend_mismatch():
    with pytest.raises(BackendError):
        inner(Vector([1, 2], EXACT), Vector([1.0, 2.0], FLOAT))


def test_vector_rejects_mixed_entries():
    with pytest.raises(BackendError):
        Vector([Q(1), 0.5])


def test_dyad_matches_reference_projectors():
    assert dyad(paper.codeword_wy()) == paper.projector_wy()
    assert dyad(paper.codeword_xz()) == paper.projector_xz()
    row = paper.projector_wy().rows[0]
    assert row == (Q(F(1, 8)), Q(0, F(-1, 8)), Q(F(-1, 8)), Q(F(1, 4)))
    row = paper.projector_xz().rows[0]
    assert row == (Q(F(1, 16)), Q(0, F(1, 16)), Q(F(3, 16)), Q(F(1, 8)))


def test_dyad_of_basis_vector():
    assert dyad(Vector([1, 0])) == Matrix([[1, 0], [0, 0]])


def test_commutator_of_share_dyads():
    # frozen by hand multiplication of the two 2x2 blocks on coordinates 3-4
    c = commutator(dyad(paper.share_w()), dyad(paper.share_x()))
    want = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, F(-1, 16)], [0, 0, F(1, 16), 0]])
    assert c == want
    c = commutator(dyad(paper.share_y()), dyad(paper.share_z()))
    s = Q(0, F(1, 64))
    assert c == Matrix([[0, -s, 0, 0], [s, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


def test_commutator_trivial_cases():
    a = dyad(paper.codeword_wy())
    assert commutator(a, a).is_zero()
    assert commutator(Matrix.identity(4), paper.projector_xz()).is_zero()


def test_commutator_shape_mismatch():
    with pytest.raises(ValueError):
        commutator(Matrix.identity(2), Matrix.identity(3))


def test_rotation_maps_e4_in_plane_14():
    r = rotation_matrix(4, (1, 4), QUARTER_PI)
    h = Q(0, F(1, 2))
    assert r @ Vector.basis(4, 4) == Vector([h, 0, 0, h])


def test_rotation_at_zero_is_identity():
    for plane in [(1, 2), (2, 5), (1, 5)]:
        assert rotation_matrix(5, plane, PiAngle(0)) == Matrix.identity(5)
        assert rotation_matrix(5, plane, 0.0, FLOAT) == Matrix.identity(5, FLOAT)


def test_rotation_float_orthogonal():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        i, j = sorted(rng.choice(n, 2, replace=False) + 1)
        r = rotation_matrix(n, (int(i), int(j)), float(rng.uniform(-7, 7)), FLOAT)
        assert (r.T @ r).equals(Matrix.identity(n, FLOAT), 1e-12)


def test_rotation_exact_rejects_odd_angles():
    with pytest.raises(NotRepresentableError):
        rotation_matrix(3, (1, 2), PiAngle(F(1, 3)))
    with pytest.raises(NotRepresentableError):
        rotation_matrix(3, (1, 2), 0.3)


def test_rotation_bad_plane():
    with pytest.raises(ValueError):
        rotation_matrix(3, (2, 2), QUARTER_PI)
    with pytest.raises(ValueError):
        rotation_matrix(3, (1, 4), QUARTER_PI)


@pytest.mark.parametrize("k", range(-8, 9))
def test_rotation_inverse_pairs_exact(k):
    r = rotation_matrix(3, (1, 3), PiAngle(F(k, 4)))
    r_inv = rotation_matrix(3, (1, 3), PiAngle(F(-k, 4)))
    assert r @ r_inv == Matrix.identity(3)
    assert r.is_orthogonal(0.0)


def test_trace_norm_examples():
    assert trace_norm_sym(Matrix.diag([1.0, -1.0])) == pytest.approx(2.0, abs=1e-14)
    assert trace_norm_sym(Matrix.zeros(3, backend=FLOAT)) == 0.0


def test_trace_norm_of_orthonormal_dyad_difference():
    rng = np.random.default_rng(5)
    for _ in range(20):
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        a, b = q[:, 0], q[:, 1]
        assert trace_norm_sym(np.outer(a, a) - np.outer(b, b)) == pytest.approx(2.0, abs=1e-12)


def test_trace_norm_rejects_nonsymmetric_and_exact():
    with pytest.raises(ValueError):
        trace_norm_sym(Matrix([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(BackendError):
        trace_norm_sym(Matrix.identity(2))


def test_jacobi_against_char_poly():
    rng = np.random.default_rng(3)
    for n, oracle in [(2, eig_sym_2x2), (3, eig_sym_3x3)]:
        for _ in range(100):
            a = rng.standard_normal((n, n))
            a = a + a.T
            got = sorted(jacobi_eigenvalues(a))
            assert np.allclose(got, oracle(a), atol=1e-10)


def test_jacobi_degenerate_and_larger():
    rng = np.random.default_rng(9)
    q, _ = np.linalg.qr(rng.standard_normal((13, 13)))
    vals = np.array([0.25, -0.3415, 0.0915] + [0.0] * 10)
    a = q @ np.diag(vals) @ q.T
    assert np.allclose(sorted(jacobi_eigenvalues(a)), sorted(vals), atol=1e-12)


@settings(max_examples=100)
@given(exact_vectors(3), exact_vectors(3))
def test_cauchy_schwarz_exact(u, v):
    assert inner(u, v) ** 2 <= inner(u, u) * inner(v, v)


@settings(max_examples=100)
@given(exact_vectors(4))
def test_trace_of_dyad_is_squared_norm(v):
    assert dyad(v).trace() == inner(v, v)


@settings(max_examples=50)
@given(exact_vectors(3), exact_vectors(3), exact_vectors(3))
def test_commutator_antisymmetric(u, v, w):
    a = dyad(u) + dyad(w)
    b = dyad(v)
    assert commutator(a, b) == -commutator(b, a)


def test_exact_and_float_agree_on_example_products():
    for v in paper.quadrit_codewords():
        assert np.allclose(dyad(v).to_numpy(), dyad(v.to_float()).to_numpy(), atol=1e-12)
    c_exact = commutator(dyad(paper.share_y()), dyad(paper.share_z())).to_numpy()
    c_float = commutator(dyad(paper.share_y().to_float()), dyad(paper.share_z().to_float())).to_numpy()
    assert np.allclose(c_exact, c_float, atol=1e-12)
    assert math.isclose(float(inner(paper.share_w(), paper.share_x())),
                        inner(paper.share_w().to_float(), paper.share_x().to_float()), abs_tol=1e-12)
