import pytest

from utils.errors import InterpolationError
from utils.polynomials import (IntPolynomial, LaurentPolynomial, fit_counts, interpolate, quantum_binomial,
                               quantum_integer)


def test_interpolate_constant():
    assert interpolate([(2, 1), (3, 1), (5, 1)], 1) == IntPolynomial((1,))


def test_interpolate_q_plus_one():
    poly = fit_counts([(5, 6), (2, 3), (3, 4)], 1)
    assert poly == IntPolynomial((1, 1))
    assert poly(1) == 2
    assert str(poly) == 'q + 1'


def test_interpolate_non_integral_reason():
    with pytest.raises(InterpolationError) as e:
        interpolate([(2, 0), (4, 1)], 1)
    assert e.value.reason == 'non-integral fit'


def test_held_out_point_mismatch():
    with pytest.raises(InterpolationError) as e:
        interpolate([(2, 1), (3, 1), (5, 2)], 0)
    assert e.value.reason == 'over-determined mismatch'


def test_too_few_points():
    with pytest.raises(InterpolationError) as e:
        interpolate([(2, 1)], 2)
    assert e.value.reason == 'too few points'


def test_quantum_integer_and_binomial():
    assert quantum_integer(2).terms() == {1: 1, -1: 1}
    assert quantum_binomial(2, 1) == quantum_integer(2)
    assert quantum_binomial(3, 0) == LaurentPolynomial.monomial(1, 0)


def test_laurent_arithmetic():
    x = LaurentPolynomial.from_terms({-1: 1, 1: 1})
    assert (x * x).terms() == {-2: 1, 0: 2, 2: 1}
    assert (x - x).is_zero()
    assert LaurentPolynomial.from_int_polynomial(IntPolynomial((1, 1))).terms() == {0: 1, 2: 1}
