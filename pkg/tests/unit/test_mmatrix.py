"""Tests for geocrystal.tools.mmatrix."""

from __future__ import annotations

from fractions import Fraction

import pytest

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import build_model, d1_host
from geocrystal.errors import UnsupportedModel
from geocrystal.laurent import Laurent, PolyMatrix
from geocrystal.tools.folding import Involution
from geocrystal.tools.mmatrix import (
    check_conjugation,
    check_r_matrix_identity,
    j_matrix,
    m_matrix_d1,
    mmatrix_suite,
    n_matrix_a1,
    point_matrix,
)
from geocrystal.tools.sampling import random_values, unit_point
from geocrystal.tools.tropical_r import apply_r_values
from tests.helpers import assert_records_pass

# B(D1_4) at L = 10
D1_4_POINT = {
    "l1": Fraction(2),
    "l2": Fraction(3),
    "l3": Fraction(1, 2),
    "l4": Fraction(5),
    "lb3": Fraction(1),
    "lb2": Fraction(1, 3),
    "lb1": Fraction(2),
}


class TestJMatrices:
    @pytest.mark.parametrize("which", ["sigma0", "sigma1", "sigma2", "sigma3", "sigma4"])
    def test_inverse(self, which):
        j, j_inv = j_matrix(which, 6), j_matrix(which, 6, inverse=True)
        assert j @ j_inv == PolyMatrix.identity(12)
        assert j_inv @ j == PolyMatrix.identity(12)

    def test_j0_is_self_inverse(self):
        j0 = j_matrix("sigma0", 5)
        assert j0 @ j0 == PolyMatrix.identity(10)
        assert j0[0, 9] == Laurent.monomial(1)

    def test_size(self):
        assert j_matrix("sigma1", 4).size == 8


class TestMMatrices:
    def test_a1_n_matrix_at_unit_point(self, a1_2):
        n = point_matrix(unit_point(a1_2, "B", 1))
        assert n[0, 0] == n[1, 1] == n[2, 2] == 1
        assert n[1, 0] == n[2, 1] == -1
        assert n[0, 2] == Laurent.monomial(1, -1)

    def test_needs_b_points(self, a1_2):
        with pytest.raises(UnsupportedModel):
            point_matrix(unit_point(a1_2, "V"))

    def test_no_matrix_for_b1(self):
        with pytest.raises(UnsupportedModel):
            point_matrix(unit_point(AffineTypeId("b1", 2), "B"))

    def test_d1_matrix_size(self, d1_4):
        assert point_matrix(unit_point(d1_4, "B", 2)).size == 8

    def test_equal_spectra_and_unchanged_points(self, d1_4, rng):
        gc = build_model(d1_4, "B")
        L = Fraction(3)
        x, y = random_values(gc, rng, L), random_values(gc, rng, L)
        assert check_r_matrix_identity(d1_4, x, y, x, y, L, L)

    def test_a1_identity_fails_for_swapped_factors(self, a1_2):
        x = {"l1": Fraction(2), "l2": Fraction(1), "l3": Fraction(1, 2)}
        y = {"l1": Fraction(1), "l2": Fraction(1), "l3": Fraction(5)}
        assert not check_r_matrix_identity(a1_2, x, y, y, x, Fraction(1), Fraction(5))

    def test_d1_corner_carries_spectral_parameter(self):
        m = m_matrix_d1(D1_4_POINT, Fraction(10))
        assert m[0, 7] == Laurent.monomial(2, 10)
        assert m[7, 0] == 10

    def test_d1_row_after_middle(self):
        m = m_matrix_d1(D1_4_POINT, Fraction(10))
        assert [m[4, j] for j in range(3)] == [3, Fraction(3, 2), Fraction(1, 2)]
        assert m[4, 3] == Laurent.monomial(1, 10)
        assert m[4, 4] == Fraction(1, 5)

    @pytest.mark.parametrize(
        "which,host",
        [
            ("sigma0", 5),
            ("sigma1", 5),
            ("sigma1", 3),
            ("sigma2", 4),
            ("sigma2", 8),
            ("sigma3", 5),
            ("sigma4", 6),
        ],
    )
    def test_conjugation(self, which, host, rng):
        values = random_values(build_model(d1_host(host), "B"), rng, Fraction(2))
        assert check_conjugation(Involution(which, host), values, Fraction(2))

    @pytest.mark.parametrize("which,host", [("sigma1", 4), ("sigma2", 6), ("sigma4", 6)])
    def test_conjugation_entrywise(self, which, host, rng):
        gc = build_model(d1_host(host), "B")
        L = Fraction(7, 2)
        values = random_values(gc, rng, L)
        inv = Involution(which, host)
        j, j_inv = j_matrix(which, host), j_matrix(which, host, inverse=True)
        pulled = j_inv @ m_matrix_d1(inv.apply(values), L) @ j
        original = m_matrix_d1(values, L)
        size = 2 * host
        wrong = [(a, b) for a in range(size) for b in range(size) if pulled[a, b] != original[a, b]]
        assert wrong == []

    def test_d1_r_satisfies_matrix_identity(self, d1_4, rng):
        gc = build_model(d1_4, "B")
        L, K = Fraction(2), Fraction(5, 3)
        x, y = random_values(gc, rng, L), random_values(gc, rng, K)
        xp, yp = apply_r_values(d1_4, "B", x, y, L, K)
        assert check_r_matrix_identity(d1_4, x, y, xp, yp, L, K)

    def test_n_matrix_diagonal(self):
        n = n_matrix_a1({"l1": Fraction(2), "l2": Fraction(1, 3), "l3": Fraction(3, 2)})
        assert [n[i, i] for i in range(3)] == [Fraction(1, 2), 3, Fraction(2, 3)]


class TestSuite:
    @pytest.mark.parametrize("family,rank", [("a1", 2), ("a1", 3), ("b1", 3), ("d2", 2)])
    def test_mmatrix_suite(self, small_config, family, rank, rng):
        assert_records_pass(mmatrix_suite(small_config(family, rank, samples=4), rng))

    @pytest.mark.slow
    @pytest.mark.parametrize("family,rank", [("d1", 4), ("d1", 5), ("a2-even", 2)])
    def test_mmatrix_suite_large_hosts(self, small_config, family, rank, rng):
        assert_records_pass(mmatrix_suite(small_config(family, rank, samples=5), rng))
