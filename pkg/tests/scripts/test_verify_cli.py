"""Tests for the verify and suites subcommands."""

import json

import pytest

from tests.scripts.conftest import json_lines, run_cli


class TestVerify:
    def test_axioms_a1_2(self):
        result = run_cli("verify", "--type", "a1", "--rank", "2", "--suite", "axioms", "--samples", "5", "--seed", "1")
        assert result.returncode == 0, result.stdout + result.stderr
        lines = json_lines(result.stdout)
        summary = lines[-1]
        assert summary["status"] == "ok"
        assert summary["suite"] == "axioms"
        assert summary["failed"] == 0
        assert all("check" in line for line in lines[:-1])

    def test_unknown_suite_is_bad_config(self):
        result = run_cli("verify", "--type", "a1", "--rank", "2", "--suite", "nope")
        assert result.returncode == 2
        output = json.loads(result.stdout)
        assert output["status"] == "error"
        assert "unknown suite" in output["message"]

    def test_rank_below_minimum(self):
        result = run_cli("verify", "--type", "d1", "--rank", "3", "--suite", "axioms")
        assert result.returncode == 2
        assert json.loads(result.stdout)["status"] == "error"

    def test_config_file(self, tmp_path):
        config = tmp_path / "suite.yaml"
        config.write_text("type: a1\nrank: 3\nsamples: 4\nseed: 11\n", encoding="utf-8")
        result = run_cli("verify", "--config", str(config), "--suite", "product")
        assert result.returncode == 0, result.stdout + result.stderr
        summary = json_lines(result.stdout)[-1]
        assert (summary["type"], summary["n"], summary["seed"]) == ("a1", 3, 11)

    @pytest.mark.slow
    def test_d1_4_rmap_acceptance(self):
        result = run_cli(
            "verify", "--type", "d1", "--rank", "4", "--suite", "rmap",
            "--l", "2", "--m", "3", "--k", "5", "--samples", "20", "--seed", "7",
        )
        assert result.returncode == 0, result.stdout + result.stderr
        assert json_lines(result.stdout)[-1]["status"] == "ok"


class TestSuites:
    def test_dagger_listing(self):
        result = run_cli("suites", "--type", "a2-even-dagger", "--rank", "2")
        assert result.returncode == 0
        output = json.loads(result.stdout)
        assert output["status"] == "ok"
        assert "iso" not in output["suites"]
        assert "rmap" not in output["suites"]
        assert "ud" in output["suites"]

    def test_d1_listing(self):
        output = json.loads(run_cli("suites", "--type", "d1", "--rank", "4").stdout)
        assert output["suites"][0] == "axioms"
        assert "folding" in output["suites"]
