"""Tests for geocrystal.tools.geom_crystal: point operations and the exact suites."""

from __future__ import annotations

from fractions import Fraction

import pytest

from geocrystal.cartan import AffineTypeId, cartan_matrix
from geocrystal.catalogue import build_model
from geocrystal.config import make_config
from geocrystal.errors import DivisionByZero, UnsupportedModel
from geocrystal.models import GCPoint
from geocrystal.tools.geom_crystal import (
    apply_e,
    axioms_suite,
    iso_suite,
    iso_xi,
    model_for,
    schubert_chart,
    schubert_suite,
    sigma_bar,
    sigma_bar_inverse,
    sigma_bar_suite,
    structure_functions,
    verify_verma,
    verma_suite,
    verma_words,
)
from geocrystal.tools.sampling import unit_point
from tests.helpers import assert_exact, assert_records_pass

AXIOM_CASES = [
    ("a1", 2, "V"), ("a1", 3, "V"), ("a1", 3, "B"),
    ("b1", 2, "V"), ("b1", 3, "B"),
    ("d1", 4, "V"), ("d1", 4, "B"),
    ("a2-odd", 3, "V"), ("a2-odd", 3, "B"),
    ("d2", 2, "V"), ("d2", 3, "B"),
    ("a2-even", 2, "V"), ("a2-even", 2, "B"), ("a2-even", 2, "V2"),
    ("a2-even-dagger", 2, "V"), ("a2-even-dagger", 2, "V2"),
]


def _a1_point(*coords, L="1") -> GCPoint:
    return GCPoint(
        type="a1", n=len(coords), L=L, coords={f"x{i}": v for i, v in enumerate(coords, start=1)}
    )


class TestApplyE:
    def test_e_i_scales_one_coordinate(self):
        p = _a1_point(1, 1, 1)
        out = apply_e(model_for(p), 2, 5, p)
        assert out.coords == {"x1": "1", "x2": "5", "x3": "1"}

    def test_e_0_divides_every_coordinate(self):
        p = _a1_point(1, 1, 1)
        out = apply_e(model_for(p), 0, 2, p)
        assert out.coords == {"x1": "1/2", "x2": "1/2", "x3": "1/2"}

    def test_unit_parameter_is_identity(self, d1_4):
        p = unit_point(d1_4, "B", 3)
        gc = model_for(p)
        for i in d1_4.indices:
            assert apply_e(gc, i, 1, p) == p

    def test_zero_parameter_rejected(self):
        p = _a1_point(1, 2)
        with pytest.raises(DivisionByZero):
            apply_e(model_for(p), 1, 0, p)

    def test_wrong_coordinates_rejected(self):
        p = GCPoint(type="a1", n=2, coords={"x1": "1", "y2": "1"})
        with pytest.raises(UnsupportedModel):
            model_for(p)


class TestStructureFunctions:
    def test_gamma_1_carries_the_spectral_parameter(self):
        p = _a1_point(1, 1, 1, L="3")
        gamma, eps, phi = structure_functions(model_for(p), 1, p)
        assert_exact(gamma, 3, "gamma_1")
        assert phi == gamma * eps

    def test_epsilon_n(self):
        p = _a1_point(2, 3, 4)
        _, eps, _ = structure_functions(model_for(p), 3, p)
        assert_exact(eps, Fraction(1, 4), "epsilon_3")

    def test_b_d1_epsilon_0(self, d1_4):
        gc = build_model(d1_4, "B")
        values = {name: Fraction(1) for name in gc.coords}
        values.update({"l1": Fraction(5, 3), "l2": Fraction(7), "lb2": Fraction(7)})
        values["lb1"] = gc.solve_dependent(values, Fraction(2))
        _, eps = gc.structure(values, Fraction(2))
        assert_exact(eps[0], Fraction(10, 3), "epsilon_0")


class TestVerma:
    def test_words_for_commuting_nodes(self):
        left, right = verma_words(0, 0, 1, 3, Fraction(2), Fraction(5))
        assert left == [(1, 2), (3, 5)]
        assert right == [(3, 5), (1, 2)]

    def test_double_bond_is_oriented(self):
        a, b = Fraction(2), Fraction(3)
        assert verma_words(-1, -2, 0, 1, a, b) == verma_words(-2, -1, 1, 0, a, b)

    def test_no_relation_for_affine_a1_1(self):
        with pytest.raises(ValueError):
            verma_words(-2, -2, 0, 1, Fraction(1), Fraction(1))

    def test_same_index_rejected(self, a1_2):
        gc = build_model(a1_2, "V")
        with pytest.raises(ValueError):
            verify_verma(gc, 1, 1, {"x1": Fraction(1), "x2": Fraction(1)}, Fraction(1), Fraction(2), Fraction(3))

    def test_d1_branch_nodes(self, d1_4):
        gc = build_model(d1_4, "V")
        x = {name: Fraction(k + 2, k + 1) for k, name in enumerate(gc.coords)}
        a = cartan_matrix(d1_4)
        assert a[0, 2] == -1
        assert verify_verma(gc, 0, 2, x, Fraction(3), Fraction(2), Fraction(5, 7))
        assert verify_verma(gc, 3, 4, x, Fraction(3), Fraction(2), Fraction(5, 7))


class TestSigmaBar:
    def test_b1_fixed_when_a_is_one(self):
        p = GCPoint(type="b1", n=2, L="2", coords={"x1": "1", "x2": "3", "xb1": "1/2"})
        image, a = sigma_bar(p)
        assert a == 1
        assert image.coords == p.coords

    def test_round_trip(self):
        p = GCPoint(type="d1", n=4, L="5", coords={"x1": "2", "x2": "1/3", "x3": "7", "x4": "3/2", "xb2": "4", "xb1": "5/6"})
        image, _ = sigma_bar(p)
        assert sigma_bar_inverse(image) == p

    def test_needs_a_v_point(self, a1_2):
        with pytest.raises(UnsupportedModel):
            sigma_bar(unit_point(a1_2, "B"))

    @pytest.mark.parametrize("rank", [3, 4])
    def test_d2_swaps_epsilon_1_and_epsilon_top(self, rank):
        coords = {"x0": "2", **{f"x{i}": str(i + 2) for i in range(1, rank + 1)}}
        coords.update({f"xb{i}": f"1/{i + 1}" for i in range(1, rank)})
        p = GCPoint(type="d2", n=rank, L="3", coords=coords)
        image, _ = sigma_bar(p)
        v = build_model(p.affine_type, "V")
        _, eps_x = v.structure(p.values(), p.spectral)
        _, eps_y = v.structure(image.values(), p.spectral)
        for i in range(1, rank):
            assert eps_y[rank - i] == eps_x[i]


class TestXi:
    def test_unit_point_maps_to_unit_point(self, d1_4):
        x = iso_xi(unit_point(d1_4, "B", 1), "B->V")
        assert x.model == "V"
        assert set(x.coords.values()) == {"1"}

    def test_direction_must_match_model(self, d1_4):
        with pytest.raises(UnsupportedModel):
            iso_xi(unit_point(d1_4, "B", 1), "V->B")


class TestSuites:
    @pytest.mark.parametrize("family,rank,model", AXIOM_CASES)
    def test_axioms(self, small_config, family, rank, model, rng):
        assert_records_pass(axioms_suite(small_config(family, rank, model), rng))

    @pytest.mark.parametrize("family,rank,model", [case for case in AXIOM_CASES if case[2] != "V2"])
    def test_verma(self, small_config, family, rank, model, rng):
        assert_records_pass(verma_suite(small_config(family, rank, model, samples=3), rng))

    @pytest.mark.parametrize(
        "family,rank",
        [("a1", 2), ("a1", 3), ("b1", 2), ("d1", 4), ("a2-odd", 3), ("d2", 2), ("d2", 3),
         ("d2", 4), ("a2-even", 2), ("a2-even-dagger", 2)],
    )
    def test_sigma_bar(self, small_config, family, rank, rng):
        assert_records_pass(sigma_bar_suite(small_config(family, rank), rng))

    @pytest.mark.parametrize(
        "family,rank",
        [("a1", 2), ("b1", 2), ("d1", 4), ("a2-odd", 3), ("d2", 2), ("a2-even", 2)],
    )
    def test_iso(self, small_config, family, rank, rng):
        assert_records_pass(iso_suite(small_config(family, rank), rng))

    @pytest.mark.parametrize("family,rank", [("a1", 3), ("b1", 2), ("d1", 4), ("a2-odd", 3)])
    def test_schubert(self, small_config, family, rank, rng):
        assert_records_pass(schubert_suite(small_config(family, rank), rng))

    def test_no_schubert_chart_for_d2(self):
        with pytest.raises(UnsupportedModel):
            schubert_chart(AffineTypeId("d2", 2))

    @pytest.mark.slow
    @pytest.mark.parametrize("family,rank,model", [("d1", 5, "V"), ("d1", 5, "B"), ("b1", 3, "V"), ("d2", 3, "V")])
    def test_axioms_at_full_sample_count(self, family, rank, model, rng):
        cfg = make_config(type=family, rank=rank, model=model, samples=50, seed=11)
        assert_records_pass(axioms_suite(cfg, rng))
