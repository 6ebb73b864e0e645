from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eutactic.linalg import scalar_ops
from eutactic.quadfield import (
    BackendError,
    NotRepresentableError,
    QuadScalar as Q,
    format_exact,
    format_float,
    parse_exact,
    parse_float,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
quads = st.builds(Q, rationals, rationals)


def test_conjugate_product():
    assert scalar_ops(Q(1, 1), Q(1, -1), "mul") == Q(-1, 0)


def test_inverse_of_half_sqrt2():
    assert scalar_ops(Q(0, F(1, 2)), op="inv") == Q(0, 1)


def test_componentwise_add():
    assert scalar_ops(Q(F(1, 2)), Q(0, F(1, 4)), "add") == Q(F(1, 2), F(1, 4))


def test_eq_and_neg():
    assert scalar_ops(Q(3, 2), Q(3, 2), "eq")
    assert scalar_ops(Q(3, 2), op="neg") == Q(-3, -2)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        scalar_ops(Q(0), op="inv")
    with pytest.raises(ZeroDivisionError):
        Q(0).inverse()


def test_backend_mixing_raises():
    with pytest.raises(BackendError):
        Q(1) + 0.5
    with pytest.raises(BackendError):
        0.5 * Q(1)
    with pytest.raises(BackendError):
        scalar_ops(Q(1), 1.0, "add")


def test_lowest_terms_positive_denominator():
    x = Q(F(2, -4), F(6, 8))
    assert x.a == F(-1, 2) and x.a.denominator > 0
    assert x.b == F(3, 4)


def test_zero_only_when_both_parts_vanish():
    assert not Q(0, 0)
    assert Q(0, F(1, 10**9))
    assert Q(2, -1) != 0


def test_sign_with_opposite_parts():
    assert Q(3, -2).sign() == 1  # 3 > 2 sqrt2
    assert Q(2, -2).sign() == -1
    assert Q(-3, 2).sign() == -1
    assert Q(-1, 1).sign() == 1
    assert Q(0, 0).sign() == 0


@pytest.mark.parametrize(
    "x, root",
    [
        (Q(F(1, 2)), Q(0, F(1, 2))),  # sqrt(1/2) = sqrt2 / 2
        (Q(4), Q(2)),
        (Q(3, 2), Q(1, 1)),  # (1 + sqrt2)^2
        (Q(F(9, 4), -1), Q(-F(1, 2), 1)),  # (sqrt2 - 1/2)^2
        (Q(0), Q(0)),
    ],
)
def test_sqrt_in_field(x, root):
    assert x.sqrt() == root


def test_sqrt_not_representable():
    with pytest.raises(NotRepresentableError):
        Q(F(5, 8)).sqrt()
    with pytest.raises(NotRepresentableError):
        Q(1, 1).sqrt()


@settings(max_examples=200)
@given(quads, quads, quads)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if x:
        assert x * x.inverse() == 1


@given(quads)
def test_float_conversion_close(x):
    assert abs(float(x) - (float(x.a) + float(x.b) * 2 ** 0.5)) <= 1e-12 * (1 + abs(float(x)))


@given(quads, quads)
def test_ordering_matches_floats_when_far_apart(x, y):
    if abs(float(x) - float(y)) > 1e-9:
        assert (x < y) == (float(x) < float(y))


@pytest.mark.parametrize(
    "text, value",
    [
        ("-1/4*s2", Q(0, F(-1, 4))),
        ("1/2", Q(F(1, 2))),
        ("0", Q(0)),
        ("1/2 + 1/4*s2", Q(F(1, 2), F(1, 4))),
        ("3 - 2*s2", Q(3, -2)),
        ("-7/3", Q(F(-7, 3))),
    ],
)
def test_parse_exact(text, value):
    assert parse_exact(text) == value


@pytest.mark.parametrize("bad", ["", "s2", "1/2 +", "0.5", "1/2*s3", "1 + -2*s2"])
def test_parse_exact_rejects(bad):
    with pytest.raises(ValueError):
        parse_exact(bad)


@given(quads)
def test_exact_text_round_trip(x):
    assert parse_exact(format_exact(x)) == x


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_text_round_trip(x):
    text = format_float(x)
    assert "e" in text
    assert parse_float(text) == x
