from __future__ import annotations

import logging


def setup_logging(verbose: bool = False) -> None:
    """Configure default console logging."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format="%(message)s")
