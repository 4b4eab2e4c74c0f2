"""Tests for exact quadratic field arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given

from exceptions import ParameterError
from quadratic import InfiniteLimit, QuadraticNumber, as_quadratic, rational_sqrt, squarefree_decomposition
from tests.strategies import nonzero_quadratic_numbers, quadratic_numbers

PHI = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)


def test_normal_form():
    """Test that equal values share one representation."""
    assert QuadraticNumber(0, 1, 8) == QuadraticNumber(0, 2, 2)
    assert QuadraticNumber(3, 2, 4) == 7
    assert QuadraticNumber(3, 0, 5).d == 1
    assert QuadraticNumber.sqrt_of(Fraction(1, 4)) == Fraction(1, 2)
    assert hash(QuadraticNumber(3)) == hash(Fraction(3))


def test_negative_field_rejected():
    with pytest.raises(ParameterError):
        QuadraticNumber(0, 1, -1)
    with pytest.raises(ParameterError):
        QuadraticNumber.sqrt_of(-2)


def test_squarefree_decomposition():
    assert squarefree_decomposition(72) == (6, 2)
    assert squarefree_decomposition(13) == (1, 13)
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-1) is None


def test_golden_ratio_identities():
    assert PHI * PHI == PHI + 1
    assert 1 / PHI == PHI - 1
    assert PHI.norm() == -1
    assert PHI.conjugate() == 1 - PHI
    assert PHI ** -2 == 2 - PHI


def test_exact_ordering():
    assert QuadraticNumber(2, -1, 5) < 0
    assert QuadraticNumber(3, -1, 5) > 0
    assert Fraction(8, 5) < PHI < Fraction(81, 50)
    assert abs(QuadraticNumber(2, -1, 5)) == QuadraticNumber(-2, 1, 5)


def test_square_roots():
    assert (PHI + 1).sqrt() == PHI
    assert QuadraticNumber(2, 1, 5).sqrt() is None
    assert QuadraticNumber(-1).sqrt() is None
    assert QuadraticNumber(2).sqrt() == QuadraticNumber(0, 1, 2)


def test_mixed_fields_rejected():
    with pytest.raises(ParameterError) as excinfo:
        QuadraticNumber(0, 1, 2) + QuadraticNumber(0, 1, 3)
    assert excinfo.value.exit_code == 4
    assert excinfo.value.http_status == 400
    assert QuadraticNumber(0, 1, 2) != QuadraticNumber(0, 1, 3)


def test_rendering():
    assert str(PHI) == '1/2 + 1/2*sqrt(5)'
    assert str(QuadraticNumber(0, -1, 2)) == '-sqrt(2)'
    assert str(QuadraticNumber(Fraction(3, 2))) == '3/2'
    assert PHI.decimal(10) == '1.618033989'
    assert PHI.to_dict(5) == {'x': '1/2', 'y': '1/2', 'D': 5, 'decimal': '1.6180'}
    assert float(PHI) == pytest.approx(1.6180339887)


def test_infinite_limits():
    assert -InfiniteLimit.POSITIVE is InfiniteLimit.NEGATIVE
    assert str(InfiniteLimit.NEGATIVE) == '-inf'
    assert as_quadratic(3) == QuadraticNumber(3)


@given(quadratic_numbers(), quadratic_numbers(), quadratic_numbers())
def test_distributive(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a - b) + b == a


@given(nonzero_quadratic_numbers())
def test_inverse(a):
    assert a * a.inverse() == 1
    assert a / a == 1


@given(quadratic_numbers(), quadratic_numbers())
def test_norm_is_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


@given(nonzero_quadratic_numbers())
def test_sign_agrees_with_float(a):
    assert (a.sign() > 0) == (float(a) > 0)


@given(quadratic_numbers())
def test_square_has_a_root(a):
    assert (a * a).sqrt() == abs(a)
