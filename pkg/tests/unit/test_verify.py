"""Tests for the suite runner."""

import pytest

from geocrystal.constants import SUITES
from geocrystal.errors import BadConfig
from geocrystal.tools.verify import applicable, run_suite, suites_for
from tests.helpers import assert_report_ok


class TestSuiteSelection:
    def test_unknown_suite(self, small_config):
        with pytest.raises(BadConfig, match="unknown suite"):
            suites_for(small_config("a1", 2), "nope")

    def test_all_for_d1_runs_every_suite(self, small_config):
        assert suites_for(small_config("d1", 4), "all") == list(SUITES)

    def test_all_for_dagger(self, small_config):
        names = suites_for(small_config("a2-even-dagger", 2), "all")
        for missing in ("iso", "folding", "mmatrix", "rmap"):
            assert missing not in names
        assert "axioms" in names
        assert "ud" in names

    def test_sigma_bar_needs_v(self, small_config):
        cfg = small_config("d1", 4, model="B")
        assert not applicable(cfg, "sigma-bar")
        with pytest.raises(BadConfig, match="does not apply"):
            suites_for(cfg, "sigma-bar")

    def test_single_suite(self, small_config):
        assert suites_for(small_config("a1", 2), "product") == ["product"]


class TestRunSuite:
    def test_axioms_a1_2(self, small_config):
        report = run_suite(small_config("a1", 2), "axioms")
        assert_report_ok(report)
        assert report.summary()["suite"] == "axioms"
        assert report.summary()["seed"] == 3

    def test_deterministic(self, small_config):
        first = run_suite(small_config("a1", 3), "product")
        second = run_suite(small_config("a1", 3), "product")
        assert first.model_dump() == second.model_dump()

    def test_suite_draws_do_not_depend_on_neighbours(self, small_config):
        alone = run_suite(small_config("a1", 2), "product")
        together = run_suite(small_config("a1", 2), "all")
        product = [r for r in together.records if r.suite == "product"]
        assert [r.model_dump() for r in product] == [r.model_dump() for r in alone.records]

    def test_rmap_b1_2(self, small_config):
        assert_report_ok(run_suite(small_config("b1", 2, samples=4), "rmap"))
