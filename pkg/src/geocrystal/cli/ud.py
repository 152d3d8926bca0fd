"""ud CLI: tropical crystal operations on integer lattice points."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import NoReturn

from geocrystal.models import LatticePoint
from geocrystal.tools.ultradisc import lattice_e, lattice_r, lattice_structure


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _output_json(data: dict) -> None:
    print(json.dumps(data, ensure_ascii=False, indent=2))


def _error_exit(message: str) -> NoReturn:
    _output_json({"status": "error", "message": message})
    sys.exit(1)


def _handle_e(args: argparse.Namespace) -> None:
    """e: ẽ_i^k on a lattice point."""
    p = LatticePoint(**_load_json(args.input))
    _output_json({"status": "ok", "point": lattice_e(p, args.i, args.k).model_dump()})


def _handle_structure(args: argparse.Namespace) -> None:
    p = LatticePoint(**_load_json(args.input))
    data = lattice_structure(p)
    _output_json(
        {"status": "ok", **{name: {str(i): v for i, v in values.items()} for name, values in data.items()}}
    )


def _handle_r(args: argparse.Namespace) -> None:
    """r: the combinatorial R on {"x": point, "y": point}."""
    data = _load_json(args.input)
    xp, yp = lattice_r(LatticePoint(**data["x"]), LatticePoint(**data["y"]))
    _output_json({"status": "ok", "x": xp.model_dump(), "y": yp.model_dump()})


_HANDLERS = {
    "e": _handle_e,
    "structure": _handle_structure,
    "r": _handle_r,
}


def _dispatch(args: argparse.Namespace) -> None:
    handler = _HANDLERS.get(args.subcommand)
    if handler is None:
        _error_exit(f"Unknown command: {args.subcommand}")
    try:
        handler(args)
    except Exception as e:
        _error_exit(str(e))


def register(parent_subparsers: argparse._SubParsersAction) -> None:
    """Register ud."""
    parser = parent_subparsers.add_parser(
        "ud",
        description="Ultra-discretized crystal operations on integer points",
        help="tropical crystal operations",
    )
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("e")
    p.add_argument("--input", required=True, help="lattice point JSON file")
    p.add_argument("--i", type=int, required=True, help="index i")
    p.add_argument("--k", type=int, required=True, help="integer exponent k")
    p.set_defaults(func=_dispatch)

    for name in ["structure", "r"]:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="input JSON file")
        p.set_defaults(func=_dispatch)

    parser.set_defaults(func=lambda args: parser.print_help() or sys.exit(1))
