"""rmap CLI: the tropical R map on a pair of JSON points."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from geocrystal.models import GCPoint
from geocrystal.tools.mmatrix import check_r_matrix_identity
from geocrystal.tools.tropical_r import apply_r


def _output(result: dict) -> None:
    json.dump(result, sys.stdout, ensure_ascii=False, indent=2)
    print()
    if result.get("status") == "error":
        sys.exit(1)


def _run(args: argparse.Namespace) -> None:
    try:
        data = json.loads(Path(args.input).read_text(encoding="utf-8"))
        x, y = GCPoint(**data["x"]), GCPoint(**data["y"])
        xp, yp = apply_r(x, y)
        result: dict = {"status": "ok", "x": xp.model_dump(), "y": yp.model_dump()}
        if x.model == "B" and x.type in ("a1", "d1"):
            result["matrix_identity"] = check_r_matrix_identity(
                x.affine_type, x.values(), y.values(), xp.values(), yp.values(), x.spectral, y.spectral
            )
    except Exception as e:
        result = {"status": "error", "message": str(e)}
    _output(result)


def register(parent_subparsers: argparse._SubParsersAction) -> None:
    """Register rmap."""
    parser = parent_subparsers.add_parser(
        "rmap",
        description="Apply the tropical R map to a pair {x, y} of points",
        help="apply R",
    )
    parser.add_argument("--input", required=True, help='JSON file {"x": point, "y": point}')
    parser.set_defaults(func=_run)
