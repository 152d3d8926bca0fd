"""verify / suites CLI."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from geocrystal.config import SuiteConfig, load_config, make_config
from geocrystal.constants import ALL_SUITE, SUITES
from geocrystal.tools.verify import applicable, run_suite


def _config_from_args(args: argparse.Namespace) -> SuiteConfig:
    """SuiteConfig from --config (if given) with the explicit flags layered on top."""
    spectra = [s for s in (args.l, args.m, args.k) if s is not None] or args.spectra
    overrides: dict[str, Any] = {
        "type": args.type,
        "rank": args.rank,
        "model": args.model,
        "spectra": spectra,
        "samples": args.samples,
        "seed": args.seed,
        "radius": args.radius,
        "levels": args.levels,
    }
    if args.config:
        return load_config(args.config, **overrides)
    return make_config(**overrides)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML suite configuration")
    parser.add_argument("--type", help="affine type id, e.g. d1 or a2-even")
    parser.add_argument("--rank", type=int, help="rank n")
    parser.add_argument("--model", choices=["V", "B", "V2"], help="coordinate model")


def _run_verify(args: argparse.Namespace) -> None:
    cfg = _config_from_args(args)
    report = run_suite(cfg, args.suite)
    for record in report.records:
        print(json.dumps(record.model_dump(), ensure_ascii=False))
    print(json.dumps(report.summary(), ensure_ascii=False))
    if not report.ok:
        sys.exit(1)


def _run_suites(args: argparse.Namespace) -> None:
    flags = {"type": args.type, "rank": args.rank, "model": args.model}
    cfg = load_config(args.config, **flags) if args.config else make_config(**flags)
    result = {
        "status": "ok",
        "type": cfg.type,
        "n": cfg.rank,
        "model": cfg.model,
        "suites": [name for name in SUITES if applicable(cfg, name)],
    }
    json.dump(result, sys.stdout, ensure_ascii=False, indent=2)
    print()


def register(parent_subparsers: argparse._SubParsersAction) -> None:
    """Register verify and suites."""
    parser = parent_subparsers.add_parser(
        "verify",
        description="Run randomized exact verification suites",
        help="run verification suites",
    )
    _add_config_flags(parser)
    parser.add_argument("--suite", default=ALL_SUITE, help=f"one of {', '.join(SUITES)} or all")
    parser.add_argument("--l", help="first spectral parameter (p/q)")
    parser.add_argument("--m", help="second spectral parameter (p/q)")
    parser.add_argument("--k", help="third spectral parameter (p/q)")
    parser.add_argument("--spectra", nargs="+", help="spectral parameters to draw from")
    parser.add_argument("--samples", type=int, help="samples per check")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--radius", type=int, help="box radius for ultra-discretization")
    parser.add_argument("--levels", type=int, nargs="+", help="integer levels for combinatorial R")
    parser.set_defaults(func=_run_verify)

    listing = parent_subparsers.add_parser(
        "suites",
        description="List the suites that apply to a type and model",
        help="list applicable suites",
    )
    _add_config_flags(listing)
    listing.set_defaults(func=_run_suites)
