"""Tests for geocrystal.models."""

from __future__ import annotations

from fractions import Fraction

import pytest
from pydantic import ValidationError

from geocrystal.cartan import AffineTypeId
from geocrystal.models import CheckRecord, GCPoint, ProductPoint, SuiteReport


def _point(**coords) -> GCPoint:
    return GCPoint(type="a1", n=2, coords=coords)


class TestGCPoint:
    def test_coordinates_are_canonicalized(self):
        p = GCPoint(type="a1", n=2, L="4/2", coords={"x1": "6/4", "x2": 3})
        assert p.coords == {"x1": "3/2", "x2": "3"}
        assert p.L == "2"
        assert p.spectral == 2
        assert p.values() == {"x1": Fraction(3, 2), "x2": Fraction(3)}

    def test_zero_coordinate_rejected(self):
        with pytest.raises(ValidationError):
            _point(x1="0", x2="1")

    def test_zero_spectral_rejected(self):
        with pytest.raises(ValidationError):
            GCPoint(type="a1", n=2, L="0", coords={"x1": "1"})

    def test_unknown_type_rejected(self):
        with pytest.raises(ValidationError):
            GCPoint(type="g2", n=2, coords={"x1": "1"})

    def test_build_and_replace(self, half):
        t = AffineTypeId("d1", 4)
        p = GCPoint.build(t, "B", 3, {"l1": half})
        assert p.affine_type == t
        q = p.replace({"l1": Fraction(2)})
        assert q.model == "B"
        assert q.coords == {"l1": "2"}
        assert q.spectral == 3


class TestProductPoint:
    def test_factors_must_agree(self):
        a = _point(x1="1", x2="2")
        b = GCPoint(type="a1", n=3, coords={"x1": "1"})
        with pytest.raises(ValidationError):
            ProductPoint(factors=[a, b])

    def test_needs_a_factor(self):
        with pytest.raises(ValidationError):
            ProductPoint(factors=[])


class TestReports:
    def test_advisory_failures_do_not_fail(self):
        report = SuiteReport(type="d1", n=4, suite="rmap", seed=0)
        report.records.append(CheckRecord(suite="rmap", check="closed-form", failed=3, advisory=True))
        report.records.append(CheckRecord(suite="rmap", check="inversion", passed=5))
        assert report.ok
        summary = report.summary()
        assert summary["status"] == "ok"
        assert summary["failed"] == 0
        assert summary["passed"] == 5

    def test_failure_is_reported(self):
        report = SuiteReport(type="a1", n=2, suite="axioms", seed=1)
        report.records.append(CheckRecord(suite="axioms", check="e-action", passed=4, failed=1))
        assert not report.ok
        assert report.summary()["status"] == "failed"
