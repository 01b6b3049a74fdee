from __future__ import annotations

import argparse

from ..args import add_config_arg, add_kappa_arg
from ..common import EXIT_OK, guarded, load_run
from ...app.diagnostics import run_diagnostics, weak_elimination
from ...formatting.reports import render_diagnostics_text


def add_parser(subparsers) -> argparse.ArgumentParser:
    """Register the validate subcommand parser."""
    parser = subparsers.add_parser("validate", help="Check the approximations behind the anti-PT model.")
    add_config_arg(parser)
    add_kappa_arg(parser)
    return parser


def _run(args: argparse.Namespace) -> int:
    run = load_run(args)
    rows = run_diagnostics(run.params)
    label = run.config.name or run.config.source
    print(f"{label} (kappa = {run.params.kappa:.6g} MHz)")
    print(render_diagnostics_text(rows, weak=weak_elimination(rows)))
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    """Execute the validate command."""
    return guarded(_run, args)
