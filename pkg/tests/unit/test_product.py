"""Tests for geocrystal.tools.product."""

from __future__ import annotations

from fractions import Fraction

import pytest

from geocrystal.models import GCPoint, ProductPoint
from geocrystal.tools.product import (
    pair_epsilon,
    pair_gamma,
    product_apply_e,
    product_structure_functions,
    product_suite,
    split_parameter,
)
from geocrystal.tools.sampling import random_point
from tests.helpers import assert_records_pass


class TestPairFormulas:
    def test_split_parameter(self):
        c1, c2 = split_parameter(Fraction(3), Fraction(2), Fraction(1))
        assert c1 == Fraction(7, 3)
        assert c2 == Fraction(9, 7)

    def test_split_at_unit_parameter(self):
        assert split_parameter(Fraction(1), Fraction(5, 2), Fraction(7)) == (1, 1)

    def test_gamma_multiplies(self):
        assert pair_gamma(Fraction(2), Fraction(3)) == 6

    def test_epsilon(self):
        assert pair_epsilon(Fraction(1), Fraction(1), Fraction(1)) == 2


class TestProductPoints:
    def _pair(self, a1_2, rng) -> ProductPoint:
        return ProductPoint(factors=[random_point(a1_2, "V", rng, 2), random_point(a1_2, "V", rng, 3)])

    def test_unit_action(self, a1_2, rng):
        pp = self._pair(a1_2, rng)
        for i in a1_2.indices:
            assert product_apply_e(pp, i, 1) == pp

    def test_spectral_parameters_stay_with_factors(self, a1_2, rng):
        pp = self._pair(a1_2, rng)
        moved = product_apply_e(pp, 0, Fraction(5, 2))
        assert [p.L for p in moved.factors] == ["2", "3"]

    def test_epsilon_transforms(self, a1_2, rng):
        pp = self._pair(a1_2, rng)
        c = Fraction(4, 3)
        for i in a1_2.indices:
            gamma, eps, phi = product_structure_functions(pp, i)
            gamma2, eps2, _ = product_structure_functions(product_apply_e(pp, i, c), i)
            assert eps2 == eps / c
            assert gamma2 == c**2 * gamma
            assert phi == gamma * eps

    def test_single_factor_is_the_base_crystal(self):
        p = GCPoint(type="a1", n=2, coords={"x1": "2", "x2": "3"})
        moved = product_apply_e(ProductPoint(factors=[p]), 1, 5)
        assert moved.factors[0].coords == {"x1": "10", "x2": "3"}


class TestSuite:
    @pytest.mark.parametrize("family,rank,model", [("a1", 3, "V"), ("b1", 2, "V"), ("d1", 4, "B"), ("a2-even", 2, "V")])
    def test_product_suite(self, small_config, family, rank, model, rng):
        assert_records_pass(product_suite(small_config(family, rank, model, samples=4), rng))
