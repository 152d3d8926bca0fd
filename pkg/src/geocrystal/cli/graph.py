"""graph CLI: DOT export of a tropical crystal box."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import available_models
from geocrystal.errors import BadConfig
from geocrystal.tools.ultradisc import box_size, crystal_graph_dot, ud_crystal


def _run(args: argparse.Namespace) -> None:
    try:
        t = AffineTypeId(args.type, args.rank)
    except ValueError as e:
        raise BadConfig(str(e)) from e
    if args.model not in available_models(t):
        raise BadConfig(f"model {args.model} does not exist for {t}")
    if args.radius < 0:
        raise BadConfig("radius must be >= 0")
    tc = ud_crystal(t, args.model, args.level)
    dot = crystal_graph_dot(tc, args.radius)
    if args.output is None:
        sys.stdout.write(dot)
        return
    Path(args.output).write_text(dot, encoding="utf-8")
    result = {"status": "ok", "path": args.output, "nodes": box_size(tc, args.radius)}
    json.dump(result, sys.stdout, ensure_ascii=False, indent=2)
    print()


def register(parent_subparsers: argparse._SubParsersAction) -> None:
    """Register graph."""
    parser = parent_subparsers.add_parser(
        "graph",
        description="Export the crystal graph of a lattice box as DOT",
        help="DOT export",
    )
    parser.add_argument("--type", required=True, help="affine type id")
    parser.add_argument("--rank", type=int, required=True, help="rank n")
    parser.add_argument("--model", default="V", choices=["V", "B", "V2"])
    parser.add_argument("--level", type=int, default=0, help="integer level (UD of L)")
    parser.add_argument("--radius", type=int, default=1, help="box radius")
    parser.add_argument("--output", help="write DOT to this file instead of stdout")
    parser.set_defaults(func=_run)
