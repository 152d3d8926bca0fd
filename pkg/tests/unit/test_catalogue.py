"""Tests for geocrystal.catalogue: chart construction and the maps between charts."""

from __future__ import annotations

from fractions import Fraction

import pytest

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import (
    available_models,
    build_model,
    host_type,
    power_spectral,
    xi_map,
    xi_spectral_power,
)
from geocrystal.errors import DomainError, UnsupportedModel
from geocrystal.semiring import MAX_PLUS
from geocrystal.tools.sampling import unit_point


class TestCoordinates:
    def test_a1_v_coordinates(self):
        assert build_model(AffineTypeId("a1", 3), "V").coords == ("x1", "x2", "x3")

    def test_d1_v_coordinates(self, d1_4):
        assert build_model(d1_4, "V").coords == ("x1", "x2", "x3", "x4", "xb2", "xb1")

    def test_d1_b_coordinates(self, d1_4):
        gc = build_model(d1_4, "B")
        assert gc.coords == ("l1", "l2", "l3", "l4", "lb3", "lb2", "lb1")
        assert gc.dependent == "lb1"

    def test_d2_has_x0(self):
        assert build_model(AffineTypeId("d2", 2), "V").coords[0] == "x0"

    def test_every_index_acts(self, d1_4):
        for model in ("V", "B"):
            gc = build_model(d1_4, model)
            assert sorted(gc.actions) == list(d1_4.indices)
            for changed in gc.actions.values():
                assert set(changed) == set(gc.coords)


class TestAvailability:
    def test_available_models(self):
        assert available_models(AffineTypeId("a1", 2)) == ("V", "B")
        assert available_models(AffineTypeId("a2-even", 2)) == ("V", "B", "V2")
        assert available_models(AffineTypeId("a2-even-dagger", 2)) == ("V", "V2")

    @pytest.mark.parametrize(
        "family,rank,model",
        [("a2-even-dagger", 2, "B"), ("b1", 2, "V2"), ("a1", 2, "W")],
    )
    def test_unsupported(self, family, rank, model):
        with pytest.raises(UnsupportedModel):
            build_model(AffineTypeId(family, rank), model)

    def test_no_xi_for_a2_even_dagger(self):
        with pytest.raises(UnsupportedModel):
            xi_map(AffineTypeId("a2-even-dagger", 2), "B->V")


class TestV_A1:
    """Closed forms of V(A1_2) at x = (2, 3)."""

    values = {"x1": Fraction(2), "x2": Fraction(3)}

    def test_structure(self, a1_2):
        gc = build_model(a1_2, "V")
        gamma, eps = gc.structure(self.values, Fraction(1))
        assert eps == {0: 2, 1: Fraction(3, 2), 2: Fraction(1, 3)}
        assert gamma[1] == Fraction(4, 3)
        assert gamma[0] * gamma[1] * gamma[2] == 1

    def test_actions(self, a1_2, half):
        gc = build_model(a1_2, "V")
        assert gc.act(1, half, self.values, 1) == {"x1": 1, "x2": 3}
        assert gc.act(0, half, self.values, 1) == {"x1": 4, "x2": 6}

    def test_tropical_structure(self, a1_2):
        gc = build_model(a1_2, "V")
        _, eps = gc.structure({"x1": 1, "x2": 4}, 2, MAX_PLUS)
        assert eps == {0: 3, 1: 3, 2: -4}


class TestBModels:
    def test_unit_point_absorbs_the_constraint(self, a1_2):
        p = unit_point(a1_2, "B", 6)
        assert p.coords == {"l1": "1", "l2": "1", "l3": "6"}

    def test_constraint_value(self, d1_4):
        gc = build_model(d1_4, "B")
        p = unit_point(d1_4, "B", Fraction(7, 2))
        assert gc.constraint_value(p.values()) == Fraction(7, 2)

    def test_twisted_constraint_is_quadratic(self):
        t = AffineTypeId("a2-odd", 3)
        gc = build_model(t, "B")
        assert gc.constraint_power == 2
        p = unit_point(t, "B", 3)
        assert p.values()["mb3"] == 9

    def test_tropical_solve(self, a1_2):
        gc = build_model(a1_2, "B")
        assert gc.solve_dependent({"l1": 2, "l2": -1}, 4, MAX_PLUS) == 3


class TestXi:
    def test_a1_v_to_b(self, a1_2):
        spec = xi_map(a1_2, "V->B")
        out = spec.run({"x1": Fraction(2), "x2": Fraction(3)}, Fraction(5))
        assert out == {"l1": 10, "l2": Fraction(3, 2), "l3": Fraction(1, 3)}

    def test_a1_round_trip(self, a1_2):
        forward, back = xi_map(a1_2, "V->B"), xi_map(a1_2, "B->V")
        x = {"x1": Fraction(2, 7), "x2": Fraction(5, 3)}
        assert back.run(forward.run(x, 4), 4) == x

    def test_spectral_power(self):
        assert xi_spectral_power(AffineTypeId("d2", 2)) == 2
        assert xi_spectral_power(AffineTypeId("b1", 2)) == 1
        assert xi_map(AffineTypeId("d2", 2), "B->V").target_spectral(Fraction(9, 4)) == Fraction(3, 2)

    def test_bad_direction(self, a1_2):
        with pytest.raises(ValueError):
            xi_map(a1_2, "sideways")


class TestSpectralPowers:
    def test_square_root_must_be_exact(self):
        assert power_spectral(Fraction(4, 9), Fraction(1, 2)) == Fraction(2, 3)
        with pytest.raises(DomainError):
            power_spectral(Fraction(2), Fraction(1, 2))

    def test_host_types(self):
        b1_host = host_type(AffineTypeId("b1", 2))
        assert (b1_host.family, b1_host.rank) == ("d1", 3)
        assert host_type(AffineTypeId("a2-odd", 3)) == AffineTypeId("d1", 6)
        assert host_type(AffineTypeId("a2-even", 2)) == AffineTypeId("d1", 6)
