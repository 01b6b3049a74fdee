from __future__ import annotations

import argparse

from ..domain.constants import PIPELINES, PORT_ALIASES


def add_config_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        default="table1_magnon_readout",
        help="Config file or bundled name (default: table1_magnon_readout).",
    )


def add_kappa_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--kappa",
        type=float,
        default=None,
        help="Total cavity rate in MHz, realized through the config's kappa_control rule.",
    )


def add_port_arg(parser: argparse.ArgumentParser, *, combined: bool = True, repeat: bool = False) -> None:
    choices = [alias for alias in PORT_ALIASES if combined or alias != "combined"]
    parser.add_argument(
        "--port",
        choices=choices,
        action="append" if repeat else "store",
        default=None,
        help="Probe port (default: m1)." + (" Repeatable, paired with --data." if repeat else ""),
    )


def add_pipeline_arg(parser: argparse.ArgumentParser, default: str = "antipt") -> None:
    parser.add_argument(
        "--pipeline",
        choices=PIPELINES,
        default=default,
        help=f"Eigenvalue pipeline (default: {default}).",
    )


def add_grid_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid-min", type=float, default=None, help="Lowest probe frequency in MHz.")
    parser.add_argument("--grid-max", type=float, default=None, help="Highest probe frequency in MHz.")
    parser.add_argument("--grid-points", type=int, default=None, help="Number of probe frequencies.")


def add_kappa_range_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kappa-min", type=float, default=8.0, help="Smallest kappa in MHz (default: 8).")
    parser.add_argument("--kappa-max", type=float, default=105.0, help="Largest kappa in MHz (default: 105).")
    parser.add_argument("--kappa-steps", type=int, default=195, help="Number of kappa values (default: 195).")


def add_out_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        default=None,
        help="Write output to a file instead of stdout (a PATH.manifest.json is written next to it).",
    )


def add_no_progress_arg(parser: argparse.ArgumentParser) -> None:
    """Add the --no-progress flag."""
    parser.add_argument("--no-progress", action="store_true", help="Disable progress output.")


def add_jobs_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes for kappa sweeps (default: 1).")
