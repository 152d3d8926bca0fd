"""Tests for geocrystal.tools.tropical_r."""

from __future__ import annotations

from fractions import Fraction

import pytest

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import build_model
from geocrystal.config import make_config
from geocrystal.errors import UnsupportedModel
from geocrystal.tools.folded_r import closed_form_r
from geocrystal.tools.geom_crystal import constraint_holds
from geocrystal.tools.sampling import random_point, random_values
from geocrystal.tools.tropical_r import (
    apply_r,
    build_vw,
    r_map,
    restriction_records,
    rmap_suite,
)
from tests.helpers import assert_records_pass


class TestApplyR:
    def test_equal_spectra_is_identity(self, a1_2, rng):
        x, y = random_point(a1_2, "B", rng, 3), random_point(a1_2, "B", rng, 3)
        assert apply_r(x, y) == (x, y)

    def test_spectral_parameters_swap(self, a1_2, rng):
        x, y = random_point(a1_2, "B", rng, 2), random_point(a1_2, "B", rng, 5)
        xp, yp = apply_r(x, y)
        assert (xp.L, yp.L) == ("5", "2")
        gc = build_model(a1_2, "B")
        assert constraint_holds(gc, xp.values(), Fraction(5))
        assert constraint_holds(gc, yp.values(), Fraction(2))

    def test_inversion(self, a1_2, rng):
        x, y = random_point(a1_2, "V", rng, 2), random_point(a1_2, "V", rng, 7)
        assert apply_r(*apply_r(x, y)) == (x, y)

    def test_mixed_points_rejected(self, a1_2, rng):
        x = random_point(a1_2, "B", rng)
        y = random_point(AffineTypeId("a1", 3), "B", rng)
        with pytest.raises(UnsupportedModel):
            apply_r(x, y)

    def test_d1_equal_spectra(self, d1_4, rng):
        x, y = random_point(d1_4, "B", rng, 2), random_point(d1_4, "B", rng, 2)
        assert apply_r(x, y) == (x, y)


class TestCatalogue:
    def test_no_r_for_a2_even_dagger(self):
        with pytest.raises(UnsupportedModel):
            r_map(AffineTypeId("a2-even-dagger", 2))

    def test_no_r_on_v2(self):
        with pytest.raises(UnsupportedModel):
            r_map(AffineTypeId("a2-even", 2), "V2")

    def test_vw_family_ranges(self, d1_4):
        family = build_vw(d1_4)
        assert family.top == 3
        assert sorted(family.V) == [0, 1, 2, 3]
        assert sorted(family.W) == [1, 2, 3]

    def test_no_vw_family_for_a1(self, a1_2):
        with pytest.raises(UnsupportedModel):
            build_vw(a1_2)

    def test_outputs_cover_both_factors(self, d1_4):
        coords = build_model(d1_4, "B").coords
        names = set(r_map(d1_4).exprs)
        assert names == {f"1:{c}" for c in coords} | {f"2:{c}" for c in coords}


class TestFoldedClosedForm:
    @pytest.mark.parametrize(
        "family,rank",
        [("b1", 2), ("b1", 3), ("d2", 2), pytest.param("d2", 3, marks=pytest.mark.slow)],
    )
    def test_matches_eta_conjugated_d1(self, family, rank, rng):
        t = AffineTypeId(family, rank)
        gc = build_model(t, "B")
        L, M = Fraction(2), Fraction(5, 3)
        x, y = random_values(gc, rng, L), random_values(gc, rng, M)
        assert closed_form_r(t, x, y, L, M) == r_map(t).run(x, y, L, M)

    def test_b1_output_constraints(self, rng):
        t = AffineTypeId("b1", 3)
        gc = build_model(t, "B")
        L, M = Fraction(3), Fraction(1, 2)
        x, y = random_values(gc, rng, L), random_values(gc, rng, M)
        xp, yp = closed_form_r(t, x, y, L, M)
        assert constraint_holds(gc, xp, M)
        assert constraint_holds(gc, yp, L)

    @pytest.mark.parametrize("family,rank", [("a2-odd", 3), ("a2-even", 2)])
    def test_twisted_outputs_cover_coordinates(self, family, rank, rng):
        t = AffineTypeId(family, rank)
        gc = build_model(t, "B")
        x, y = random_values(gc, rng, Fraction(2)), random_values(gc, rng, Fraction(3))
        xp, yp = closed_form_r(t, x, y, Fraction(2), Fraction(3))
        assert set(xp) == set(yp) == set(gc.coords)

    def test_unfolded_type_rejected(self, d1_4):
        with pytest.raises(UnsupportedModel, match="not a folded type"):
            closed_form_r(d1_4, {}, {}, Fraction(1), Fraction(2))

    def test_restriction_compares_closed_form(self, small_config, rng):
        records = restriction_records(small_config("b1", 2, model="B", samples=3), rng)
        assert [r.check for r in records] == ["restriction"]
        assert_records_pass(records)

    @pytest.mark.slow
    def test_twisted_closed_form_is_advisory(self, small_config, rng):
        records = restriction_records(small_config("a2-odd", 3, model="B", samples=2), rng)
        assert [(r.check, r.advisory) for r in records] == [
            ("restriction", False),
            ("folded-closed-form", True),
        ]
        assert_records_pass(records)


class TestSuite:
    @pytest.mark.parametrize("family,rank", [("a1", 2), ("a1", 3), ("b1", 2)])
    def test_rmap_suite(self, small_config, family, rank, rng):
        assert_records_pass(rmap_suite(small_config(family, rank, samples=4), rng))

    def test_closed_form_record_is_advisory(self, small_config, rng):
        records = rmap_suite(small_config("d1", 4, samples=2), rng)
        advisory = [r for r in records if r.advisory]
        assert [r.check for r in advisory] == ["v-closed-form"]
        assert_records_pass(records)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "family,rank",
        [("d1", 4), ("d1", 5), ("b1", 3), ("d2", 2), ("d2", 3), ("a2-odd", 3), ("a2-even", 2)],
    )
    def test_rmap_suite_at_acceptance_samples(self, family, rank, rng):
        cfg = make_config(type=family, rank=rank, samples=20, seed=7, spectra=["2", "3", "5"])
        assert_records_pass(rmap_suite(cfg, rng))
