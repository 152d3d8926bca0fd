"""eval CLI: geometric crystal operations on JSON points."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import NoReturn

from geocrystal.models import GCPoint, ProductPoint
from geocrystal.semiring import format_scalar, parse_scalar
from geocrystal.tools.geom_crystal import apply_e, iso_xi, model_for, sigma_bar, sigma_bar_inverse
from geocrystal.tools.product import product_apply_e, product_structure_functions


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _output_json(data: dict) -> None:
    print(json.dumps(data, ensure_ascii=False, indent=2))


def _error_exit(message: str) -> NoReturn:
    _output_json({"status": "error", "message": message})
    sys.exit(1)


# ============================================================
# Subcommand handlers
# ============================================================


def _handle_e(args: argparse.Namespace) -> None:
    """e: e_i^c on a single point."""
    p = GCPoint(**_load_json(args.input))
    moved = apply_e(model_for(p), args.i, parse_scalar(args.c), p)
    _output_json({"status": "ok", "point": moved.model_dump()})


def _handle_structure(args: argparse.Namespace) -> None:
    """structure: gamma_i, epsilon_i and phi_i for every i."""
    p = GCPoint(**_load_json(args.input))
    gamma, eps = model_for(p).structure(p.values(), p.spectral)
    _output_json(
        {
            "status": "ok",
            "gamma": {str(i): format_scalar(v) for i, v in gamma.items()},
            "epsilon": {str(i): format_scalar(v) for i, v in eps.items()},
            "phi": {str(i): format_scalar(gamma[i] * eps[i]) for i in gamma},
        }
    )


def _handle_sigma_bar(args: argparse.Namespace) -> None:
    p = GCPoint(**_load_json(args.input))
    model_for(p)
    if args.inverse:
        _output_json({"status": "ok", "point": sigma_bar_inverse(p).model_dump()})
        return
    moved, a = sigma_bar(p)
    _output_json({"status": "ok", "point": moved.model_dump(), "a": format_scalar(a)})


def _handle_xi(args: argparse.Namespace) -> None:
    """xi: the isomorphism between the B- and V-models."""
    p = GCPoint(**_load_json(args.input))
    model_for(p)
    _output_json({"status": "ok", "point": iso_xi(p, args.direction).model_dump()})


def _handle_product_e(args: argparse.Namespace) -> None:
    pp = ProductPoint(**_load_json(args.input))
    for p in pp.factors:
        model_for(p)
    moved = product_apply_e(pp, args.i, parse_scalar(args.c))
    _output_json({"status": "ok", "product": moved.model_dump()})


def _handle_product_structure(args: argparse.Namespace) -> None:
    pp = ProductPoint(**_load_json(args.input))
    for p in pp.factors:
        model_for(p)
    out: dict[str, dict[str, str]] = {"gamma": {}, "epsilon": {}, "phi": {}}
    for i in pp.factors[0].affine_type.indices:
        gamma, eps, phi = product_structure_functions(pp, i)
        out["gamma"][str(i)] = format_scalar(gamma)
        out["epsilon"][str(i)] = format_scalar(eps)
        out["phi"][str(i)] = format_scalar(phi)
    _output_json({"status": "ok", **out})


_HANDLERS = {
    "e": _handle_e,
    "structure": _handle_structure,
    "sigma-bar": _handle_sigma_bar,
    "xi": _handle_xi,
    "product-e": _handle_product_e,
    "product-structure": _handle_product_structure,
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
    """Register eval."""
    parser = parent_subparsers.add_parser(
        "eval",
        description="Apply e_i^c, structure functions and chart maps to JSON points",
        help="evaluate on points",
    )
    sub = parser.add_subparsers(dest="subcommand")

    for name in ["e", "product-e"]:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--i", type=int, required=True, help="index i")
        p.add_argument("--c", required=True, help="action parameter c (p/q)")
        p.set_defaults(func=_dispatch)
    for name in ["structure", "product-structure"]:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="input JSON file")
        p.set_defaults(func=_dispatch)

    p = sub.add_parser("sigma-bar")
    p.add_argument("--input", required=True, help="input JSON file")
    p.add_argument("--inverse", action="store_true", help="apply the inverse map")
    p.set_defaults(func=_dispatch)

    p = sub.add_parser("xi")
    p.add_argument("--input", required=True, help="input JSON file")
    p.add_argument("--direction", choices=["B->V", "V->B"], required=True)
    p.set_defaults(func=_dispatch)

    parser.set_defaults(func=lambda args: parser.print_help() or sys.exit(1))
