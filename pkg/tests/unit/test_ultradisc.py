"""Tests for the ultra-discretized crystals: axioms, connectivity, tensor rule, R, DOT."""

import random
import re

import pytest

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import build_model
from geocrystal.errors import UnsupportedModel
from geocrystal.models import LatticePoint
from geocrystal.tools.ultradisc import (
    box,
    box_size,
    check_crystal_axioms,
    check_tensor_rule,
    combinatorial_r_records,
    connectivity_record,
    connectivity_sample,
    crystal_graph_dot,
    degree_record,
    lattice_e,
    lattice_r,
    lattice_structure,
    tensor_rule_defect,
    tensor_split,
    ud_crystal,
    ud_suite,
)
from tests.helpers import assert_records_pass


def _a1_point(x1: int, x2: int, level: int = 1) -> LatticePoint:
    return LatticePoint(type="a1", n=2, model="V", level=level, coords={"x1": x1, "x2": x2})


# ============================================================
# Max-plus evaluation of V(A1_2)
# ============================================================


class TestTropicalA1:
    def test_e_shifts_one_coordinate(self):
        moved = lattice_e(_a1_point(1, 2), 1, 3)
        assert moved.coords == {"x1": 4, "x2": 2}
        assert moved.level == 1

    def test_e0_shifts_every_coordinate_down(self):
        assert lattice_e(_a1_point(1, 2), 0, 2).coords == {"x1": -1, "x2": 0}

    def test_structure(self):
        out = lattice_structure(_a1_point(1, 2))
        assert out["wt"] == {0: -4, 1: 1, 2: 3}
        assert out["eps"] == {0: 2, 1: 1, 2: -2}
        assert out["phi"] == {0: -2, 1: 2, 2: 1}

    def test_index_out_of_range(self):
        with pytest.raises(UnsupportedModel, match="outside"):
            lattice_e(_a1_point(0, 0), 3, 1)

    def test_wrong_coordinates(self):
        p = LatticePoint(type="a1", n=2, coords={"y1": 0, "y2": 0})
        with pytest.raises(UnsupportedModel, match="do not match"):
            lattice_structure(p)


class TestBoxes:
    def test_box_size(self, a1_2):
        tc = ud_crystal(a1_2)
        assert box_size(tc, 1) == 9
        assert len(list(box(tc, 1))) == 9

    def test_dependent_coordinate_is_solved(self):
        tc = ud_crystal(AffineTypeId("d1", 4), "B", 2)
        assert all(tc.on_variety(b) for b in box(tc, 1))


# ============================================================
# Crystal axioms
# ============================================================


class TestCrystalAxioms:
    @pytest.mark.parametrize("level", [0, 1, 3])
    def test_a1_2_radius_3(self, a1_2, level):
        record = check_crystal_axioms(ud_crystal(a1_2, "V", level), 3)
        assert record.failed == 0, record.details
        assert record.passed == 49

    @pytest.mark.parametrize(
        "type_id, model",
        [(AffineTypeId("b1", 2), "V"), (AffineTypeId("d2", 2), "V"), (AffineTypeId("a2-even", 2), "B")],
    )
    def test_small_types_radius_1(self, type_id, model):
        record = check_crystal_axioms(ud_crystal(type_id, model, 1), 1)
        assert record.failed == 0, record.details

    @pytest.mark.slow
    def test_d1_4_radius_2(self, d1_4):
        record = check_crystal_axioms(ud_crystal(d1_4, "V", 0), 2)
        assert record.failed == 0, record.details

    @pytest.mark.slow
    def test_d1_5_radius_2_sweeps_every_point(self):
        tc = ud_crystal(AffineTypeId("d1", 5), "V", 0)
        record = check_crystal_axioms(tc, 2)
        assert record.failed == 0, record.details
        assert record.passed == box_size(tc, 2) == 5**8


# ============================================================
# Connectivity
# ============================================================


class TestConnectivity:
    def test_radius_zero_is_trivial(self, a1_2):
        result = connectivity_sample(ud_crystal(a1_2), 0)
        assert result
        assert result.box_points == 1

    def test_a1_2_radius_2(self, a1_2):
        result = connectivity_sample(ud_crystal(a1_2), 2)
        assert result.connected
        assert result.reached == 25
        assert not result.capped

    def test_b1_2_radius_2(self):
        result = connectivity_sample(ud_crystal(AffineTypeId("b1", 2)), 2)
        assert result.connected

    def test_cap_stops_the_walk(self, a1_2):
        result = connectivity_sample(ud_crystal(a1_2), 2, cap=3)
        assert result.capped
        assert not result

    def test_capped_walk_fails_the_record(self, a1_2):
        record = connectivity_record(ud_crystal(a1_2), 2, cap=3)
        assert (record.passed, record.failed, record.skipped) == (0, 1, 0)
        assert "node cap" in record.details[0]
        assert not record.ok

    def test_record(self, a1_2):
        record = connectivity_record(ud_crystal(a1_2), 2)
        assert (record.passed, record.failed, record.skipped) == (1, 0, 0)

    @pytest.mark.slow
    def test_d1_5_radius_1(self):
        result = connectivity_sample(ud_crystal(AffineTypeId("d1", 5), "V", 0), 1)
        assert result.connected
        assert result.reached == result.box_points == 3**8
        assert not result.capped


# ============================================================
# Tensor products
# ============================================================


class TestTensorSplit:
    @pytest.mark.parametrize(
        "k, phi, eps, expected",
        [(2, 5, 1, (2, 0)), (0, 5, 1, (0, 0)), (-3, 0, 2, (0, -3)), (3, 0, 2, (1, 2))],
    )
    def test_split(self, k, phi, eps, expected):
        assert tensor_split(k, phi, eps) == expected

    def test_split_sums_to_k(self):
        for k in range(-4, 5):
            k1, k2 = tensor_split(k, 1, 3)
            assert k1 + k2 == k


class TestTensorRule:
    def test_single_pair(self, a1_2):
        x = (ud_crystal(a1_2, "V", 1), {"x1": 1, "x2": -2})
        y = (ud_crystal(a1_2, "V", 2), {"x1": 0, "x2": 3})
        for i in (0, 1, 2):
            for k in (-2, 1, 3):
                assert tensor_rule_defect(x, y, i, k) is None

    def test_sampled(self, a1_2, rng):
        record = check_tensor_rule(a1_2, "V", 10, rng)
        assert record.failed == 0, record.details
        assert record.passed == 10

    def test_d1_b_model(self, d1_4, rng):
        record = check_tensor_rule(d1_4, "B", 4, rng, radius=1)
        assert record.failed == 0, record.details


class TestDegreeConsistency:
    @pytest.mark.parametrize(
        "type_id, model",
        [(AffineTypeId("a1", 2), "V"), (AffineTypeId("d1", 4), "B"), (AffineTypeId("a2-odd", 3), "V")],
    )
    def test_models(self, type_id, model, rng):
        record = degree_record(build_model(type_id, model), rng, vectors=5)
        assert record.failed == 0, record.details


# ============================================================
# Combinatorial R
# ============================================================


class TestCombinatorialR:
    def test_equal_levels_identity(self):
        x, y = _a1_point(1, -1, level=2), _a1_point(0, 3, level=2)
        xp, yp = lattice_r(x, y)
        assert (xp.coords, yp.coords) == (x.coords, y.coords)

    def test_levels_swap(self):
        xp, yp = lattice_r(_a1_point(1, -1, level=1), _a1_point(0, 3, level=2))
        assert (xp.level, yp.level) == (2, 1)

    def test_mismatched_types(self):
        other = LatticePoint(type="a1", n=3, coords={"x1": 0, "x2": 0, "x3": 0})
        with pytest.raises(UnsupportedModel):
            lattice_r(_a1_point(0, 0), other)

    def test_records_a1_2(self, small_config):
        records = combinatorial_r_records(small_config("a1", 2), random.Random(5))
        assert [r.check for r in records] == [
            "r-equal-levels",
            "r-inversion",
            "r-commutes-e",
            "r-yang-baxter",
        ]
        assert_records_pass(records)
        # box radius 1 has 9 points, so pairs and triples run exhaustively
        assert records[1].passed == 81
        assert records[3].passed == 729


# ============================================================
# DOT export
# ============================================================


class TestCrystalGraph:
    def test_a1_2_radius_1(self, a1_2):
        dot = crystal_graph_dot(ud_crystal(a1_2), 1)
        assert dot.startswith("digraph a1_2_V {")
        assert dot.rstrip().endswith("}")
        nodes = re.findall(r'^\s+n\d+ \[label="\(-?\d+,-?\d+\)"\];$', dot, re.MULTILINE)
        edges = re.findall(r'^\s+n\d+ -> n\d+ \[label="\d"\];$', dot, re.MULTILINE)
        assert len(nodes) == 9
        assert len(edges) == 16

    def test_origin_label(self, a1_2):
        assert '[label="(0,0)"]' in crystal_graph_dot(ud_crystal(a1_2), 1)

    def test_custom_name(self, a1_2):
        assert crystal_graph_dot(ud_crystal(a1_2), 0, name="g").startswith("digraph g {")

    def test_family_dashes_replaced(self):
        dot = crystal_graph_dot(ud_crystal(AffineTypeId("a2-odd", 3)), 0)
        assert dot.startswith("digraph a2_odd_3_V {")


# ============================================================
# Suite
# ============================================================


def test_ud_suite_a1_2(small_config):
    records = ud_suite(small_config("a1", 2), random.Random(1))
    checks = [r.check for r in records]
    assert checks[:2] == ["crystal-axioms@0", "crystal-axioms@1"]
    assert "connectivity" in checks
    assert "tensor-rule" in checks
    assert "degree-consistency" in checks
    assert "r-yang-baxter" in checks
    assert_records_pass(records)


def test_ud_suite_without_r(small_config):
    records = ud_suite(small_config("a2-even-dagger", 2, radius=1), random.Random(1))
    assert not any(r.check.startswith("r-") for r in records)
    assert_records_pass(records)
