from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from ..app.manifest import build_manifest, manifest_path
from ..domain.constants import PORT_ALIASES
from ..domain.errors import (
    AntiPTError,
    ConfigError,
    GridMismatchError,
    NumericalError,
    ParameterError,
)
from ..domain.models import SystemParams, with_kappa
from ..formatting.reports import render_manifest_json
from ..infra.config import RunConfig, load_config
from ..infra.csvio import write_text_atomic

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_NUMERICAL = 4


@dataclass(frozen=True)
class LoadedRun:
    config: RunConfig
    params: SystemParams


def load_run(args: argparse.Namespace) -> LoadedRun:
    """Config from --config with the optional --kappa override applied."""
    config = load_config(args.config)
    params = config.params
    kappa = getattr(args, "kappa", None)
    if kappa is not None:
        params = with_kappa(params, kappa)
    return LoadedRun(config=config, params=params)


def resolve_port(alias: str | None) -> str:
    return PORT_ALIASES[alias or "m1"]


def resolve_out(path_str: str | None) -> Path | None:
    return None if path_str is None else Path(path_str).expanduser().resolve()


def emit(text: str, out_path: Path | None, run: LoadedRun, args: argparse.Namespace) -> None:
    """Print, or write atomically together with the run manifest."""
    if out_path is None:
        print(text, end="" if text.endswith("\n") else "\n")
        return
    write_text_atomic(out_path, text)
    manifest = build_manifest(run.config, args, out_path, params=run.params)
    write_text_atomic(manifest_path(out_path), render_manifest_json(manifest) + "\n")
    logger.info("Wrote %s", out_path)


def guarded(fn: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    """Map domain errors raised by a command onto exit codes."""
    try:
        return fn(args)
    except ConfigError as exc:
        logger.error("Error: %s", exc)
        return EXIT_CONFIG
    except (ParameterError, GridMismatchError) as exc:
        logger.error("Error: %s", exc)
        return EXIT_USAGE
    except NumericalError as exc:
        logger.error("Error: %s", exc)
        return EXIT_NUMERICAL
    except AntiPTError as exc:
        logger.error("Error: %s", exc)
        return EXIT_NUMERICAL
