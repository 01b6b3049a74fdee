from __future__ import annotations

import argparse

from ..args import add_config_arg, add_grid_args, add_kappa_arg, add_out_arg, add_port_arg
from ..common import EXIT_OK, EXIT_USAGE, emit, guarded, load_run, resolve_out, resolve_port
from ...app.fit import synthesize_measured
from ...app.spectrum import compute_spectrum, probe_grid
from ...formatting.spectrum import render_measured_csv, render_spectrum_csv


def add_parser(subparsers) -> argparse.ArgumentParser:
    """Register the spectrum subcommand parser."""
    parser = subparsers.add_parser("spectrum", help="Reflection spectrum of one probe port.")
    add_config_arg(parser)
    add_port_arg(parser)
    add_kappa_arg(parser)
    add_grid_args(parser)
    add_out_arg(parser)
    parser.add_argument(
        "--measured",
        action="store_true",
        help="Write the measured-data format (freq_MHz,mag) instead of the full spectrum.",
    )
    parser.add_argument("--db", action="store_true", help="With --measured: magnitudes in dB.")
    parser.add_argument(
        "--noise",
        type=float,
        default=0.0,
        help="With --measured: relative multiplicative noise (e.g. 0.01).",
    )
    parser.add_argument("--seed", type=int, default=None, help="Random seed for --noise.")
    return parser


def _run(args: argparse.Namespace) -> int:
    port = resolve_port(args.port)
    if args.measured and port == "combined":
        print("Error: --measured needs a single probe port, not combined.")
        return EXIT_USAGE
    if (args.db or args.noise) and not args.measured:
        print("Error: --db and --noise apply to --measured output only.")
        return EXIT_USAGE

    run = load_run(args)
    grid = probe_grid(run.params, args.grid_min, args.grid_max, args.grid_points)
    if args.measured:
        measured = synthesize_measured(
            run.params,
            port,
            grid,
            noise=args.noise,
            seed=args.seed,
            scale="dB" if args.db else "linear",
        )
        output = render_measured_csv(measured)
    else:
        output = render_spectrum_csv(compute_spectrum(run.params, port, grid))
    emit(output, resolve_out(args.out), run, args)
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    """Execute the spectrum command."""
    return guarded(_run, args)
