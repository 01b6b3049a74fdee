from __future__ import annotations

import argparse

from ..args import add_config_arg, add_kappa_arg, add_pipeline_arg
from ..common import EXIT_OK, EXIT_USAGE, guarded, load_run
from ...app.sweep import find_ep
from ...domain.effective import antipt_parameters, ep_kappa


def add_parser(subparsers) -> argparse.ArgumentParser:
    """Register the ep subcommand parser."""
    parser = subparsers.add_parser("ep", help="Locate the exceptional point kappa0 by bisection.")
    add_config_arg(parser)
    add_kappa_arg(parser)
    add_pipeline_arg(parser)
    parser.add_argument("--kappa-lo", type=float, default=None, help="Lower bracket end in MHz.")
    parser.add_argument("--kappa-hi", type=float, default=None, help="Upper bracket end in MHz.")
    parser.add_argument("--tol", type=float, default=0.01, help="Bracket width tolerance in MHz (default: 0.01).")
    return parser


def _run(args: argparse.Namespace) -> int:
    if (args.kappa_lo is None) != (args.kappa_hi is None):
        print("Error: --kappa-lo and --kappa-hi must be given together.")
        return EXIT_USAGE
    run = load_run(args)
    bracket = None if args.kappa_lo is None else (args.kappa_lo, args.kappa_hi)
    kappa0, used = find_ep(run.params, args.pipeline, bracket, tol=args.tol)
    sym = antipt_parameters(run.params)
    print(f"kappa0 = {kappa0:.4f} MHz (pipeline {args.pipeline}, bracket {used[0]:.4g}..{used[1]:.4g})")
    if sym.Omega != 0:
        print(f"closed form g^2/|Omega| = {ep_kappa(sym.g, sym.Omega):.4f} MHz")
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    """Execute the ep command."""
    return guarded(_run, args)
