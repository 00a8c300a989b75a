from fractions import Fraction

import pytest
from hypothesis import given

from conftest import rational_scalars, scalars_in, surd19_scalars
from wittthreads.exactnum import (
    IncompatibleFieldError,
    Scalar,
    ScalarParseError,
    format_scalar,
    parse_scalar,
    scalar_sqrt,
    solve_quadratic,
    squarefree_part,
)

S19 = Scalar.sqrt_of(19)


def test_conjugate_product():
    # (12 + 3 sqrt 19)(12 - 3 sqrt 19) = 144 - 9*19 = -27
    assert (S19 * 3 + 12) * (-S19 * 3 + 12) == Scalar.of(-27)


def test_pure_surd_square():
    x = Scalar.sqrt_of(19, Fraction(2, 5))
    assert x * x == Scalar.of(Fraction(76, 25))


def test_multiplicative_identity():
    x = S19 * Fraction(7, 3) - 2
    assert x * Scalar.of(1) == x


def test_inverse_rational():
    assert Scalar.of(2).inverse() == Scalar.of(Fraction(1, 2))


def test_inverse_surd():
    # conjugate over the norm: (12 - 3 sqrt 19)/(-27)
    x = S19 * 3 + 12
    assert x.inverse() == Scalar(Fraction(-4, 9), Fraction(1, 9), 19)
    assert x * x.inverse() == Scalar.of(1)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar.of(0).inverse()


def test_mixed_discriminants_refuse_to_combine():
    with pytest.raises(IncompatibleFieldError):
        _ = S19 + Scalar.sqrt_of(21)
    with pytest.raises(IncompatibleFieldError):
        _ = S19 * Scalar.sqrt_of(61)


def test_canonical_form_drops_vanished_surd():
    x = S19 + 1
    y = -S19 + 1
    assert (x + y).d == 0
    assert x * Scalar.of(0) == Scalar.of(0)


def test_discriminant_one_folds_into_rational():
    assert Scalar(Fraction(2), Fraction(3), 1) == Scalar.of(5)


def test_non_squarefree_discriminant_rejected():
    with pytest.raises(ValueError):
        Scalar(Fraction(0), Fraction(1), 12)


def test_squarefree_part():
    assert squarefree_part(12) == (2, 3)
    assert squarefree_part(19) == (1, 19)
    assert squarefree_part(49) == (7, 1)


@pytest.mark.parametrize(
    "text,value",
    [
        ("7", Scalar.of(7)),
        ("-3", Scalar.of(-3)),
        ("3/4", Scalar.of(Fraction(3, 4))),
        ("12+3*sqrt(19)", S19 * 3 + 12),
        ("12-3*sqrt(19)", -S19 * 3 + 12),
        ("-2/5*sqrt(19)", Scalar.sqrt_of(19, Fraction(-2, 5))),
        ("sqrt(21)", Scalar.sqrt_of(21)),
        ("-sqrt(21)", Scalar.sqrt_of(21, -1)),
        ("0", Scalar.of(0)),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


def test_parse_normalizes_non_squarefree_radicand():
    assert parse_scalar("sqrt(12)") == Scalar.sqrt_of(3, 2)


@pytest.mark.parametrize("bad", ["3//4", "sqrt(19", "1+", "a+b", "sqrt(0)", ""])
def test_parse_errors(bad):
    with pytest.raises(ScalarParseError):
        parse_scalar(bad)


@given(scalars_in(19))
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(rational_scalars)
def test_format_parse_round_trip_rational(x):
    assert parse_scalar(format_scalar(x)) == x


@given(surd19_scalars, surd19_scalars, surd19_scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@given(surd19_scalars)
def test_inverse_axiom(x):
    if not x.is_zero():
        assert x * x.inverse() == Scalar.of(1)


@given(surd19_scalars)
def test_sqrt_of_square_recovers_value(x):
    r = scalar_sqrt(x * x)
    assert r is not None and r * r == x * x


def test_scalar_sqrt_examples():
    assert scalar_sqrt(Scalar.of(Fraction(9, 4))) == Scalar.of(Fraction(3, 2))
    assert scalar_sqrt(Scalar.of(Fraction(76, 25))) == Scalar.sqrt_of(19, Fraction(2, 5))
    assert scalar_sqrt(Scalar.of(-1)) is None
    assert scalar_sqrt(S19 + 1) is None  # 1 + sqrt(19) is not a square in Q(sqrt 19)


def test_solve_quadratic():
    # v^2 + 7v - 3 = 0  has the two conjugate surd roots (-7 +- sqrt(61))/2
    roots = solve_quadratic(Scalar.of(1), Scalar.of(7), Scalar.of(-3))
    assert roots == [
        Scalar(Fraction(-7, 2), Fraction(1, 2), 61),
        Scalar(Fraction(-7, 2), Fraction(-1, 2), 61),
    ]
    assert solve_quadratic(Scalar.of(0), Scalar.of(2), Scalar.of(-3)) == [
        Scalar.of(Fraction(3, 2))
    ]
    assert solve_quadratic(Scalar.of(0), Scalar.of(0), Scalar.of(0)) is None
    assert solve_quadratic(Scalar.of(0), Scalar.of(0), Scalar.of(1)) == []
    assert solve_quadratic(Scalar.of(1), Scalar.of(-2), Scalar.of(1)) == [Scalar.of(1)]
