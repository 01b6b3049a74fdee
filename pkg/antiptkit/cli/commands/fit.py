from __future__ import annotations

import argparse
import logging
from pathlib import Path

from ..args import add_config_arg, add_kappa_arg, add_out_arg, add_port_arg
from ..common import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, emit, guarded, load_run, resolve_out, resolve_port
from ...app.fit import run_fit
from ...domain.fit import eigvals_from_fit
from ...formatting.reports import render_fit_json
from ...infra.csvio import read_measured

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> argparse.ArgumentParser:
    """Register the fit subcommand parser."""
    parser = subparsers.add_parser("fit", help="Fit model parameters to measured reflection magnitudes.")
    add_config_arg(parser)
    add_kappa_arg(parser)
    add_port_arg(parser, combined=False, repeat=True)
    add_out_arg(parser)
    parser.add_argument(
        "--data",
        action="append",
        required=True,
        help="Measured spectrum file (freq_MHz,mag). Repeatable.",
    )
    parser.add_argument(
        "--free",
        default=None,
        help="Comma-separated parameters to fit, e.g. phi13,g13 (default: drive phase only).",
    )
    parser.add_argument("--db", action="store_true", help="Magnitudes in the data files are in dB.")
    return parser


def _run(args: argparse.Namespace) -> int:
    ports = args.port or ["m1"]
    if len(ports) == 1:
        ports = ports * len(args.data)
    if len(ports) != len(args.data):
        print("Error: give one --port per --data file, or a single --port for all.")
        return EXIT_USAGE
    free = [name.strip() for name in args.free.split(",") if name.strip()] if args.free else None

    run = load_run(args)
    scale = "dB" if args.db else "linear"
    measured = [
        read_measured(Path(path).expanduser(), resolve_port(alias), scale)
        for path, alias in zip(args.data, ports)
    ]
    result = run_fit(measured, run.params, free)
    eigenvalues = None
    if result.params is not None:
        center = result.params.frame_center
        lab = eigvals_from_fit(result.params)
        eigenvalues = (lab[0] - center, lab[1] - center)

    emit(render_fit_json(result, eigenvalues), resolve_out(args.out), run, args)
    for name, value, sens in zip(result.names, result.values, result.sensitivities):
        logger.info("  %s = %.6g (+/- %.2g)", name, value, sens)
    if not result.converged:
        logger.error("Error: fit did not converge; best point reported.")
        return EXIT_NUMERICAL
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    """Execute the fit command."""
    return guarded(_run, args)
