from __future__ import annotations

import argparse
import logging

from ..args import (
    add_config_arg,
    add_jobs_arg,
    add_kappa_range_args,
    add_no_progress_arg,
    add_out_arg,
    add_pipeline_arg,
)
from ..common import EXIT_OK, EXIT_USAGE, emit, guarded, load_run, resolve_out
from ..progress import run_with_progress
from ...app.sweep import attraction_table, kappa_grid, sweep_kappa
from ...formatting.sweep import render_attraction_csv, render_ep_summary, render_trajectory_csv

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> argparse.ArgumentParser:
    """Register the sweep subcommand parser."""
    parser = subparsers.add_parser("sweep", help="Eigenvalue trajectory over a kappa range.")
    add_config_arg(parser)
    add_kappa_range_args(parser)
    add_pipeline_arg(parser)
    add_out_arg(parser)
    add_jobs_arg(parser)
    add_no_progress_arg(parser)
    parser.add_argument(
        "--attraction",
        action="store_true",
        help="Write the level-attraction table (dip separation vs FWHM) instead.",
    )
    return parser


def _run(args: argparse.Namespace) -> int:
    if args.jobs < 1:
        print("Error: --jobs must be at least 1.")
        return EXIT_USAGE
    values = kappa_grid(args.kappa_min, args.kappa_max, args.kappa_steps)
    run = load_run(args)
    out_path = resolve_out(args.out)

    if args.attraction:
        rows = run_with_progress(
            args.no_progress,
            "Level attraction",
            lambda progress: attraction_table(run.params, values, args.pipeline, progress=progress),
        )
        emit(render_attraction_csv(rows), out_path, run, args)
        return EXIT_OK

    trajectory = run_with_progress(
        args.no_progress,
        "Sweeping kappa",
        lambda progress: sweep_kappa(
            run.params, values, args.pipeline, jobs=args.jobs, progress=progress
        ),
    )
    emit(render_trajectory_csv(trajectory), out_path, run, args)
    logger.info(render_ep_summary(trajectory))
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    """Execute the sweep command."""
    return guarded(_run, args)
