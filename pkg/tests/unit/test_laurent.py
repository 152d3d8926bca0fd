"""Tests for geocrystal.laurent."""

from __future__ import annotations

from fractions import Fraction

import pytest

from geocrystal.errors import DivisionByZero
from geocrystal.laurent import RATIONAL_FUNCTION, Laurent, PolyMatrix, leading


class TestLaurent:
    def test_zero_coefficients_are_dropped(self):
        p = Laurent({0: 1, 2: 0})
        assert p.terms == {0: Fraction(1)}
        assert (Laurent.monomial(1) - Laurent.monomial(1)).is_zero()

    def test_arithmetic(self):
        z = Laurent.monomial(1)
        p = (z + 1) * (z - 1)
        assert p == Laurent({2: 1, 0: -1})
        assert z * Laurent.monomial(-1) == 1

    def test_evaluation(self):
        p = Laurent({-1: 2, 1: 3})
        assert p.at(2) == Fraction(7)

    def test_json(self):
        assert Laurent({1: Fraction(1, 2), -2: 3}).to_json() == {"-2": "3", "1": "1/2"}


class TestPolyMatrix:
    def test_identity_is_neutral(self):
        m = PolyMatrix([[Laurent.monomial(1), 2], [0, Laurent({-1: 1, 0: 1})]])
        assert PolyMatrix.identity(2) @ m == m
        assert m @ PolyMatrix.identity(2) == m

    def test_product(self):
        z = Laurent.monomial(1)
        a = PolyMatrix([[0, z], [1, 0]])
        b = PolyMatrix([[0, 1], [Laurent.monomial(-1), 0]])
        assert a @ b == PolyMatrix.identity(2)

    def test_must_be_square(self):
        with pytest.raises(ValueError):
            PolyMatrix([[1, 2]])

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            PolyMatrix.identity(2) @ PolyMatrix.identity(3)

    def test_json_shape(self):
        data = PolyMatrix.identity(2).to_json()
        assert data["size"] == 2
        assert data["entries"][0][0] == {"0": "1"}
        assert data["entries"][0][1] == {}


class TestRationalFunction:
    one = Laurent.const(1)

    def test_sum_over_a_shared_denominator(self):
        a = (Laurent.monomial(1), Laurent({0: 1, 1: 1}))
        assert RATIONAL_FUNCTION.add(a, a) == (Laurent.monomial(1, 2), Laurent({0: 1, 1: 1}))

    def test_monomial_denominator_folds_into_numerator(self):
        out = RATIONAL_FUNCTION.div((Laurent.const(3), self.one), (Laurent.monomial(2, 6), self.one))
        assert out == (Laurent.monomial(-2, Fraction(1, 2)), self.one)

    def test_negative_power(self):
        out = RATIONAL_FUNCTION.power((Laurent({0: 1, 1: 1}), self.one), -2)
        assert out == (self.one, Laurent({0: 1, 1: 2, 2: 1}))

    def test_leading(self):
        assert leading((Laurent({0: 1, 3: 2}), Laurent({0: 1, 1: 4}))) == (2, Fraction(1, 2))

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            RATIONAL_FUNCTION.div((self.one, self.one), (Laurent(), self.one))
