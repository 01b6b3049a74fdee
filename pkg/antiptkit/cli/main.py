from __future__ import annotations

import argparse
import logging
import sys

from .commands import ep as ep_cmd
from .commands import fit as fit_cmd
from .commands import spectrum as spectrum_cmd
from .commands import sweep as sweep_cmd
from .commands import validate as validate_cmd
from ..logging_utils import setup_logging
from .. import __version__

logger = logging.getLogger(__name__)

COMMANDS = {
    "spectrum": spectrum_cmd,
    "sweep": sweep_cmd,
    "fit": fit_cmd,
    "validate": validate_cmd,
    "ep": ep_cmd,
}


def build_parser() -> argparse.ArgumentParser:
    """Create the top-level CLI parser."""
    parser = argparse.ArgumentParser(
        description=(
            "Simulate the dissipatively coupled magnon-cavity-magnon system: reflection spectra, "
            "anti-PT eigenvalue sweeps, exceptional points and spectrum fits."
        )
    )
    parser.add_argument("--version", action="version", version=f"antiptkit {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Log debug details.")
    subparsers = parser.add_subparsers(dest="command")

    for module in COMMANDS.values():
        module.add_parser(subparsers)

    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(sys.argv[1:] if argv is None else argv)
    setup_logging(args.verbose)
    logger.debug("antiptkit %s", __version__)

    module = COMMANDS.get(args.command)
    if module is None:
        parser.print_help()
        return 2
    return module.run(args)


if __name__ == "__main__":
    raise SystemExit(main())
