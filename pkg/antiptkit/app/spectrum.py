from __future__ import annotations

import numpy as np

from ..domain.dips import combined_spectrum
from ..domain.errors import ParameterError
from ..domain.models import SystemParams
from ..domain.scattering import ProbeSpec, Spectrum, default_grid, spectrum


def probe_grid(
    params: SystemParams,
    grid_min: float | None = None,
    grid_max: float | None = None,
    points: int | None = None,
) -> np.ndarray:
    """Default grid around the frame center, overridden bound by bound."""
    base = default_grid(params) if points is None else default_grid(params, points=points)
    lo = base[0] if grid_min is None else grid_min
    hi = base[-1] if grid_max is None else grid_max
    if not hi > lo:
        raise ParameterError([f"empty probe grid [{lo:g}, {hi:g}]"])
    return np.linspace(lo, hi, base.size)


def compute_spectrum(params: SystemParams, port: str, grid: np.ndarray) -> Spectrum:
    """Spectrum of one probe port, or `combined` = (|t1| + |t2|)/2."""
    if port == "combined":
        return combined_spectrum(
            spectrum(params, ProbeSpec("magnon1", grid)),
            spectrum(params, ProbeSpec("magnon2", grid)),
        )
    if port not in ("magnon1", "magnon2", "cavity"):
        raise ParameterError([f"unknown probe port {port!r}"])
    return spectrum(params, ProbeSpec(port, grid))
