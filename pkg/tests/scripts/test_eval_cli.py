"""Tests for the eval and rmap subcommands."""

import json

from tests.scripts.conftest import run_cli, write_json

POINT = {"type": "a1", "n": 2, "model": "V", "L": "1", "coords": {"x1": "1", "x2": "5"}}


class TestEval:
    def test_e(self, tmp_path):
        path = write_json(tmp_path, POINT)
        result = run_cli("eval", "e", "--input", path, "--i", "1", "--c", "2")
        assert result.returncode == 0, result.stdout + result.stderr
        output = json.loads(result.stdout)
        assert output["point"]["coords"] == {"x1": "2", "x2": "5"}

    def test_e0_divides(self, tmp_path):
        path = write_json(tmp_path, POINT)
        output = json.loads(run_cli("eval", "e", "--input", path, "--i", "0", "--c", "2").stdout)
        assert output["point"]["coords"] == {"x1": "1/2", "x2": "5/2"}

    def test_structure(self, tmp_path):
        path = write_json(tmp_path, POINT)
        output = json.loads(run_cli("eval", "structure", "--input", path).stdout)
        assert output["gamma"]["1"] == "1/5"
        assert output["epsilon"]["1"] == "5"
        assert output["phi"]["1"] == "1"

    def test_zero_coordinate_is_rejected(self, tmp_path):
        path = write_json(tmp_path, {**POINT, "coords": {"x1": "0", "x2": "5"}})
        result = run_cli("eval", "structure", "--input", path)
        assert result.returncode == 1
        assert json.loads(result.stdout)["status"] == "error"

    def test_product_e(self, tmp_path):
        path = write_json(tmp_path, {"factors": [POINT, {**POINT, "L": "2"}]})
        result = run_cli("eval", "product-e", "--input", path, "--i", "1", "--c", "3")
        assert result.returncode == 0, result.stdout + result.stderr
        assert len(json.loads(result.stdout)["product"]["factors"]) == 2


class TestRmap:
    def test_equal_spectra_is_identity(self, tmp_path):
        other = {**POINT, "coords": {"x1": "3", "x2": "1/2"}}
        path = write_json(tmp_path, {"x": POINT, "y": other})
        result = run_cli("rmap", "--input", path)
        assert result.returncode == 0, result.stdout + result.stderr
        output = json.loads(result.stdout)
        assert output["x"]["coords"] == POINT["coords"]
        assert output["y"]["coords"] == other["coords"]

    def test_spectra_swap(self, tmp_path):
        path = write_json(tmp_path, {"x": POINT, "y": {**POINT, "L": "3"}})
        output = json.loads(run_cli("rmap", "--input", path).stdout)
        assert (output["x"]["L"], output["y"]["L"]) == ("3", "1")

    def test_no_r_for_dagger(self, tmp_path):
        point = {"type": "a2-even-dagger", "n": 2, "coords": {"x1": "1", "x2": "1"}}
        path = write_json(tmp_path, {"x": point, "y": point})
        result = run_cli("rmap", "--input", path)
        assert result.returncode == 1
        assert json.loads(result.stdout)["status"] == "error"
