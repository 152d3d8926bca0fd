"""mmatrix CLI: M- and J-matrices and the conjugation checks."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import NoReturn

from geocrystal.config import make_config
from geocrystal.models import GCPoint
from geocrystal.tools.folding import INVOLUTIONS
from geocrystal.tools.mmatrix import j_matrix, point_matrix
from geocrystal.tools.verify import run_suite


def _output_json(data: dict) -> None:
    print(json.dumps(data, ensure_ascii=False, indent=2))


def _error_exit(message: str) -> NoReturn:
    _output_json({"status": "error", "message": message})
    sys.exit(1)


def _handle_dump(args: argparse.Namespace) -> None:
    """dump: the M-matrix (N for A1) of a B-model point."""
    p = GCPoint(**json.loads(Path(args.input).read_text(encoding="utf-8")))
    _output_json({"status": "ok", "matrix": point_matrix(p).to_json()})


def _handle_j(args: argparse.Namespace) -> None:
    matrix = j_matrix(args.which, args.host, inverse=args.inverse)
    _output_json({"status": "ok", "which": args.which, "host": args.host, "matrix": matrix.to_json()})


def _handle_check(args: argparse.Namespace) -> None:
    """check: the mmatrix verification suite."""
    cfg = make_config(type=args.type, rank=args.rank, samples=args.samples, seed=args.seed)
    report = run_suite(cfg, "mmatrix")
    _output_json(
        {**report.summary(), "records": [record.model_dump() for record in report.records]}
    )
    if not report.ok:
        sys.exit(1)


_HANDLERS = {
    "dump": _handle_dump,
    "j": _handle_j,
    "check": _handle_check,
}


def _dispatch(args: argparse.Namespace) -> None:
    handler = _HANDLERS.get(args.subcommand)
    if handler is None:
        _error_exit(f"Unknown command: {args.subcommand}")
    handler(args)


def register(parent_subparsers: argparse._SubParsersAction) -> None:
    """Register mmatrix."""
    parser = parent_subparsers.add_parser(
        "mmatrix",
        description="Dump M- and J-matrices and run the conjugation checks",
        help="M-matrix tools",
    )
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("dump")
    p.add_argument("--input", required=True, help="B-model point JSON file")
    p.set_defaults(func=_dispatch)

    p = sub.add_parser("j")
    p.add_argument("--which", choices=list(INVOLUTIONS), required=True)
    p.add_argument("--host", type=int, required=True, help="rank of the host B(D1)")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=_dispatch)

    p = sub.add_parser("check")
    p.add_argument("--type", required=True, help="affine type id")
    p.add_argument("--rank", type=int, required=True, help="rank n")
    p.add_argument("--samples", type=int, help="samples per check")
    p.add_argument("--seed", type=int, help="random seed")
    p.set_defaults(func=_dispatch)

    parser.set_defaults(func=lambda args: parser.print_help() or sys.exit(1))
