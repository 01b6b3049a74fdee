from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .. import __version__
from ..domain.models import SystemParams, params_digest
from ..infra.config import RunConfig, params_to_config


@dataclass(frozen=True)
class RunManifest:
    config_source: str
    subcommand: str
    snapshot: dict[str, Any]
    params_hash: str
    output: str
    version: str
    timestamp: str
    arguments: dict[str, Any] = field(default_factory=dict)


def manifest_path(out_path: Path) -> Path:
    return out_path.with_name(out_path.name + ".manifest.json")


def _plain(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def build_manifest(
    config: RunConfig,
    args: argparse.Namespace,
    out_path: Path,
    *,
    params: SystemParams | None = None,
) -> RunManifest:
    """Manifest of one run; `params` overrides the config's when flags changed them."""
    resolved = config.params if params is None else params
    arguments = {
        key: _plain(value)
        for key, value in sorted(vars(args).items())
        if not callable(value)
    }
    return RunManifest(
        config_source=config.source,
        subcommand=str(args.command),
        snapshot=params_to_config(resolved, config.name, config.description),
        params_hash=params_digest(resolved),
        output=str(out_path),
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        arguments=arguments,
    )
