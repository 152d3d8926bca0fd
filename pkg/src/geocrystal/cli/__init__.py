"""geocrystal CLI entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from geocrystal.errors import BadConfig


def main() -> None:
    parser = argparse.ArgumentParser(
        prog="geocrystal",
        description="Affine geometric crystals, tropical R maps and their ultra-discretization",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    subparsers = parser.add_subparsers(dest="command")

    # Register all subcommand modules
    from geocrystal.cli import evaluate, graph, mmatrix, rmap, ud, verify

    verify.register(subparsers)
    evaluate.register(subparsers)
    rmap.register(subparsers)
    ud.register(subparsers)
    graph.register(subparsers)
    mmatrix.register(subparsers)

    args = parser.parse_args()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if not hasattr(args, "func"):
        parser.print_help()
        sys.exit(1)
    try:
        args.func(args)
    except SystemExit:
        raise
    except BadConfig as e:
        print(json.dumps({"status": "error", "message": str(e)}, ensure_ascii=False))
        sys.exit(2)
    except Exception as e:
        print(json.dumps({"status": "error", "message": str(e)}, ensure_ascii=False))
        sys.exit(1)
