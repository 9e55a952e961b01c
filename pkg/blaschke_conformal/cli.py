#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command-line front end.

Subcommands ``model``, ``verify``, ``render`` and ``report``. Structured
output is JSON on stdout, diagnostics go to stderr through ``logging``, and
the exit status is the ``exit_code`` of the error that stopped the run.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from . import __version__
from .blaschke import critical_points_in_disk
from .config import DEFAULT_TOLERANCES, Tolerances
from .continuation import PolarGridSpec
from .errors import BlaschkeConformalError, InvalidInput, SelfIntersection
from .modelfile import (
    complex_to_json,
    load_json,
    parse_blaschke_spec,
    parse_model,
    serialize_model,
    write_json_atomic,
    write_text_atomic,
)
from .modeler import model
from .render import FIGURE_RESOLUTION, figure_pair
from .verify import DEFAULT_DELTA, DEFAULT_PAIRS, residual_sup, verify_model

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = SelfIntersection.exit_code


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are invalid input, not verification failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(InvalidInput.exit_code, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> PolarGridSpec:
    """``"RxA"`` to a grid spec, e.g. ``"64x256"``."""
    try:
        radii, angles = (int(part) for part in text.lower().split("x"))
    except ValueError as err:
        raise InvalidInput(f"--grid expects RxA such as 64x256, got {text!r}") from err
    return PolarGridSpec(radii, angles)


def _tolerances(tol: float) -> Tolerances:
    if not tol > 0:
        raise InvalidInput(f"--tol must be positive, got {tol}")
    return replace(DEFAULT_TOLERANCES, residual=tol, boundary=tol, model_residual=tol)


def _print_json(data):
    print(json.dumps(data, indent=2))


def cmd_model(args) -> int:
    B = parse_blaschke_spec(load_json(args.input))
    built = model(B, parse_grid(args.grid), _tolerances(args.tol), workers=args.workers)
    write_json_atomic(args.output, serialize_model(built))
    _print_json({"case": built.case.value, "degree": built.degree, "residual": built.residual_certificate})
    return EXIT_OK


def cmd_verify(args) -> int:
    B = parse_blaschke_spec(load_json(args.input))
    m = parse_model(load_json(args.model), B)
    report = verify_model(B, m, parse_grid(args.grid), _tolerances(args.tol),
                          n_pairs=args.pairs, delta=args.delta, seed=args.seed)
    _print_json(report.to_dict())
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def cmd_render(args) -> int:
    if args.size < 100:
        raise InvalidInput(f"--size must be at least 100, got {args.size}")
    B = parse_blaschke_spec(load_json(args.input))
    m = parse_model(load_json(args.model), B)
    residual = residual_sup(B, m, parse_grid(args.grid))
    if residual > args.tol:
        logger.error("model residual %.3e exceeds %.1e; not rendering an untrusted model", residual, args.tol)
        return EXIT_VERIFICATION_FAILED
    svg_b, svg_p = figure_pair(B, m, args.size, args.resolution)
    paths = [f"{args.output_prefix}_B.svg", f"{args.output_prefix}_p.svg"]
    write_text_atomic(paths[0], svg_b)
    write_text_atomic(paths[1], svg_p)
    _print_json({"figures": paths})
    return EXIT_OK


def cmd_report(args) -> int:
    B = parse_blaschke_spec(load_json(args.input))
    critical = critical_points_in_disk(B)
    _print_json({
        "degree": B.degree,
        "critical_points": [{"z": complex_to_json(z), "multiplicity": k} for z, k in critical.points],
        "critical_values": [complex_to_json(k) for k in critical.values],
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="blaschke-conformal",
        description="Polynomial conformal models of finite Blaschke products",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", "-v", action="count", default=0,
                        help="Log progress to stderr (-v info, -vv debug)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    grid_help = "Polar grid as RADIIxANGLES (default: 64x256)"
    tol_help = "Residual tolerance (default: 1e-8)"

    model_parser = subparsers.add_parser("model", help="Construct a model and write the model file")
    model_parser.add_argument("input", help="Blaschke specification JSON")
    model_parser.add_argument("output", help="Model file to write")
    model_parser.add_argument("--grid", default="64x256", help=grid_help)
    model_parser.add_argument("--tol", type=float, default=1e-8, help=tol_help)
    model_parser.add_argument("--workers", type=int, default=1, help="Continuation seeds tracked concurrently")
    model_parser.set_defaults(handler=cmd_model)

    verify_parser = subparsers.add_parser("verify", help="Run the verification gates and print the report")
    verify_parser.add_argument("input", help="Blaschke specification JSON")
    verify_parser.add_argument("model", help="Model file")
    verify_parser.add_argument("--grid", default="64x256", help=grid_help)
    verify_parser.add_argument("--tol", type=float, default=1e-8, help=tol_help)
    verify_parser.add_argument("--seed", type=int, default=0, help="Seed of the pair sampler (default: 0)")
    verify_parser.add_argument("--pairs", type=int, default=DEFAULT_PAIRS, help="Number of sampled pairs")
    verify_parser.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="Minimum pair distance")
    verify_parser.set_defaults(handler=cmd_verify)

    render_parser = subparsers.add_parser("render", help="Write the critical level curve figures")
    render_parser.add_argument("input", help="Blaschke specification JSON")
    render_parser.add_argument("model", help="Model file")
    render_parser.add_argument("output_prefix", help="Figures are written to PREFIX_B.svg and PREFIX_p.svg")
    render_parser.add_argument("--size", type=int, default=800, help="Figure width in pixels (default: 800)")
    render_parser.add_argument("--resolution", type=int, default=FIGURE_RESOLUTION,
                               help=f"Samples per axis (default: {FIGURE_RESOLUTION})")
    render_parser.add_argument("--grid", default="64x256", help=grid_help)
    render_parser.add_argument("--tol", type=float, default=1e-8, help=tol_help)
    render_parser.set_defaults(handler=cmd_render)

    report_parser = subparsers.add_parser("report", help="Print critical points and values")
    report_parser.add_argument("input", help="Blaschke specification JSON")
    report_parser.set_defaults(handler=cmd_report)
    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except BlaschkeConformalError as err:
        logger.error("%s: %s", type(err).__name__, err)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
