from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from ..domain.errors import ParameterError
from ..domain.fit import FitResult, MeasuredSpectrum, Scale, fit_params, fit_phase
from ..domain.models import ProbePort, SystemParams
from ..domain.scattering import ProbeSpec, spectrum

logger = logging.getLogger(__name__)


def synthesize_measured(
    params: SystemParams,
    port: ProbePort,
    grid: np.ndarray,
    *,
    noise: float = 0.0,
    seed: int | None = None,
    scale: Scale = "linear",
) -> MeasuredSpectrum:
    """Model magnitudes with optional multiplicative Gaussian noise of relative size `noise`."""
    if noise < 0:
        raise ParameterError([f"noise must be non-negative, got {noise:g}"])
    magnitude = spectrum(params, ProbeSpec(port, grid)).magnitude
    if noise > 0:
        rng = np.random.default_rng(seed)
        magnitude = np.abs(magnitude * (1.0 + noise * rng.standard_normal(magnitude.size)))
    if scale == "dB":
        with np.errstate(divide="ignore"):
            magnitude = 20.0 * np.log10(magnitude)
    return MeasuredSpectrum(port=port, omega=np.asarray(grid, dtype=float), magnitude=magnitude, scale=scale)


def run_fit(
    measured: Sequence[MeasuredSpectrum],
    initial: SystemParams,
    free: Sequence[str] | None = None,
) -> FitResult:
    """Phase-only fit for a single magnon spectrum without --free, joint fit otherwise."""
    if not measured:
        raise ParameterError(["fit needs at least one measured spectrum"])
    if not free:
        if len(measured) != 1:
            raise ParameterError(["phase-only fit takes exactly one spectrum; name --free parameters"])
        result = fit_phase(measured[0], initial)
    else:
        result = fit_params(measured, free, initial)
    logger.info(
        "Fit %s: residual %.3e after %d iterations.",
        "converged" if result.converged else "did not converge",
        result.residual,
        result.iterations,
    )
    return result
