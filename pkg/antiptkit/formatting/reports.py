from __future__ import annotations

import json
import math
from dataclasses import asdict
from typing import Any

from ..app.diagnostics import Diagnostic
from ..app.manifest import RunManifest
from ..domain.fit import FitResult


def _finite(value: float) -> float | None:
    return value if math.isfinite(value) else None


def render_fit_json(result: FitResult, eigenvalues: tuple[complex, complex] | None = None) -> str:
    data: dict[str, Any] = {
        "converged": result.converged,
        "residual_rms": result.residual,
        "iterations": result.iterations,
        "gradient_norm": result.gradient_norm,
        "parameters": [
            {"name": name, "value": value, "sensitivity": _finite(sens)}
            for name, value, sens in zip(result.names, result.values, result.sensitivities)
        ],
        "pinned": list(result.pinned),
        "cost_history": list(result.history),
    }
    if eigenvalues is not None:
        data["eigenvalues_MHz"] = [
            {"re": value.real, "im": value.imag} for value in eigenvalues
        ]
    return json.dumps(data, ensure_ascii=False, indent=2)


def render_diagnostics_text(rows: list[Diagnostic], *, weak: bool) -> str:
    lines: list[str] = []
    width = max(len(row.name) for row in rows)
    for row in rows:
        if row.comparison == "info":
            lines.append(f"  {row.name:<{width}}  {row.value:.6g}  ({row.statement})")
            continue
        status = "ok" if row.ok else "VIOLATED"
        if row.name.endswith("asymmetry"):
            shown = f"{100 * row.value:.1f}% (limit {100 * row.limit:.0f}%)"
        else:
            shown = f"{row.value:.6g} {row.comparison} {row.limit:.6g}"
        lines.append(f"  {row.name:<{width}}  {shown}  [{status}]  {row.statement}")
    if weak:
        lines.append("\nWarning: weak elimination, kappa is not much larger than the magnon scales.")
    return "\n".join(lines)


def render_manifest_json(manifest: RunManifest) -> str:
    return json.dumps(asdict(manifest), ensure_ascii=False, indent=2, sort_keys=True)
