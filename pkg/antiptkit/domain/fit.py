"""Least-squares fits of reflection magnitudes and the eigenvalue extraction pipeline."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Iterable, Literal, Sequence

import numpy as np

from .constants import FIT_MAX_ITER, FIT_PHASE_GRID
from .effective import eigvals_general, eliminate_cavity
from .errors import DataError, ParameterError
from .models import ProbePort, SystemParams, validate
from .optimize import LeastSquaresResult, levenberg_marquardt, sensitivities
from .scattering import reflection

logger = logging.getLogger(__name__)

Scale = Literal["linear", "dB"]

PHASE_PARAMETERS = ("phi13", "phi23", "coupling_phase13", "coupling_phase23")
FIT_PARAMETERS = (
    "omega1", "omega2", "omega3",
    "gamma1", "gamma2", "gamma10", "gamma11", "gamma20", "gamma21",
    "kappa", "kappa_int", "kappa1", "kappa2", "kappa3",
    "g13", "g23",
) + PHASE_PARAMETERS


@dataclass(frozen=True)
class MeasuredSpectrum:
    port: ProbePort
    omega: np.ndarray
    magnitude: np.ndarray
    scale: Scale = "linear"

    def __post_init__(self) -> None:
        omega = np.asarray(self.omega, dtype=float)
        magnitude = np.asarray(self.magnitude, dtype=float)
        if omega.shape != magnitude.shape or omega.ndim != 1 or omega.size == 0:
            raise DataError("frequencies and magnitudes must be non-empty and of equal length")
        steps = np.diff(omega)
        if np.any(steps <= 0):
            row = int(np.argmax(steps <= 0)) + 1
            raise DataError(f"frequencies not strictly increasing at point {row}")
        if not np.all(np.isfinite(magnitude)):
            raise DataError("magnitudes must be finite")
        if self.scale == "linear" and np.any(magnitude < 0):
            raise DataError("linear magnitudes must be non-negative")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "magnitude", magnitude)

    def linear(self) -> np.ndarray:
        if self.scale == "dB":
            return 10.0 ** (self.magnitude / 20.0)
        return self.magnitude


@dataclass(frozen=True)
class FitResult:
    names: tuple[str, ...]
    values: tuple[float, ...]
    residual: float
    iterations: int
    converged: bool
    sensitivities: tuple[float, ...]
    gradient_norm: float
    history: tuple[float, ...] = ()
    pinned: tuple[str, ...] = ()
    params: SystemParams | None = None

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.values))


def wrap_phase(phi: float) -> float:
    """Map a phase into (−π, π]."""
    wrapped = math.remainder(phi, 2.0 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def _mirror_symmetric(params: SystemParams, name: str) -> bool:
    if name == "phi13":
        return params.coupling_phase13 == 0.0
    if name == "phi23":
        return params.coupling_phase23 == 0.0
    return False


def canonical_phase(params: SystemParams, name: str, phi: float) -> float:
    """Wrap a drive phase; fold it into [0, π] when |t| cannot tell φ from −φ.

    With a zero coupling phase on that antenna the magnitudes depend on the drive phase
    only through cos φ, so the non-negative representative is reported.
    """
    wrapped = wrap_phase(phi)
    return abs(wrapped) if _mirror_symmetric(params, name) else wrapped


def read_parameter(params: SystemParams, name: str) -> float:
    m1, m2, cav = params.magnon1, params.magnon2, params.cavity
    getters = {
        "omega1": lambda: m1.omega,
        "omega2": lambda: m2.omega,
        "omega3": lambda: cav.omega,
        "gamma1": lambda: params.gamma1,
        "gamma2": lambda: params.gamma2,
        "gamma10": lambda: m1.gamma_int,
        "gamma11": lambda: m1.port_rate(1),
        "gamma20": lambda: m2.gamma_int,
        "gamma21": lambda: m2.port_rate(2),
        "kappa": lambda: params.kappa,
        "kappa_int": lambda: cav.gamma_int,
        "kappa1": lambda: cav.port_rate(1),
        "kappa2": lambda: cav.port_rate(2),
        "kappa3": lambda: cav.port_rate(3),
        "g13": lambda: params.g13,
        "g23": lambda: params.g23,
        "phi13": lambda: params.phi13,
        "phi23": lambda: params.phi23,
        "coupling_phase13": lambda: params.coupling_phase13,
        "coupling_phase23": lambda: params.coupling_phase23,
    }
    try:
        return float(getters[name]())
    except KeyError:
        raise ParameterError([f"unknown fit parameter {name!r}"]) from None


def apply_parameter(params: SystemParams, name: str, value: float) -> SystemParams:
    """Return params with one named quantity set; totals move the intrinsic rate."""
    m1, m2, cav = params.magnon1, params.magnon2, params.cavity
    if name == "omega1":
        return replace(params, magnon1=replace(m1, omega=value))
    if name == "omega2":
        return replace(params, magnon2=replace(m2, omega=value))
    if name == "omega3":
        return replace(params, cavity=replace(cav, omega=value))
    if name == "gamma1":
        return replace(params, magnon1=replace(m1, gamma_int=value - (m1.total - m1.gamma_int)))
    if name == "gamma2":
        return replace(params, magnon2=replace(m2, gamma_int=value - (m2.total - m2.gamma_int)))
    if name == "gamma10":
        return replace(params, magnon1=replace(m1, gamma_int=value))
    if name == "gamma11":
        return replace(params, magnon1=m1.with_port_rate(1, value))
    if name == "gamma20":
        return replace(params, magnon2=replace(m2, gamma_int=value))
    if name == "gamma21":
        return replace(params, magnon2=m2.with_port_rate(2, value))
    if name == "kappa":
        return replace(params, cavity=replace(cav, gamma_int=value - (cav.total - cav.gamma_int)))
    if name == "kappa_int":
        return replace(params, cavity=replace(cav, gamma_int=value))
    if name in ("kappa1", "kappa2", "kappa3"):
        return replace(params, cavity=cav.with_port_rate(int(name[-1]), value))
    if name in ("g13", "g23") + PHASE_PARAMETERS:
        return replace(params, **{name: value})
    raise ParameterError([f"unknown fit parameter {name!r}"])


def apply_parameters(params: SystemParams, names: Sequence[str], values: Iterable[float]) -> SystemParams:
    for name, value in zip(names, values):
        params = apply_parameter(params, name, float(value))
    return params


def model_residuals(
    params: SystemParams,
    measured: Sequence[MeasuredSpectrum],
) -> np.ndarray:
    """Concatenated |t(ωp)| − measured over all spectra, in linear magnitude."""
    parts = [
        np.abs(reflection(params, spec.port, spec.omega)) - spec.linear()
        for spec in measured
    ]
    return np.concatenate(parts) if parts else np.zeros(0)


def _rms(residuals: np.ndarray) -> float:
    return float(np.sqrt(np.mean(residuals ** 2))) if residuals.size else 0.0


def _result(
    names: tuple[str, ...],
    lsq: LeastSquaresResult,
    params: SystemParams,
    values: Sequence[float],
) -> FitResult:
    return FitResult(
        names=names,
        values=tuple(float(v) for v in values),
        residual=_rms(lsq.residuals),
        iterations=lsq.iterations,
        converged=lsq.converged,
        sensitivities=tuple(float(s) for s in sensitivities(lsq)),
        gradient_norm=lsq.gradient_norm,
        history=lsq.history,
        pinned=tuple(names[j] for j in lsq.pinned),
        params=params,
    )


def fit_phase(
    measured: MeasuredSpectrum,
    params: SystemParams,
    *,
    grid_size: int = FIT_PHASE_GRID,
    max_iter: int = FIT_MAX_ITER,
) -> FitResult:
    """Fit the drive phase of the probed antenna (φ13 for magnon1, φ23 for magnon2)."""
    if measured.port == "magnon1":
        name = "phi13"
    elif measured.port == "magnon2":
        name = "phi23"
    else:
        raise ParameterError([f"phase fit needs a magnon port, got {measured.port!r}"])
    validate(params, probe=measured.port)

    def residuals(x: np.ndarray) -> np.ndarray:
        return model_residuals(apply_parameter(params, name, float(x[0])), [measured])

    candidates = -math.pi + 2.0 * math.pi * (np.arange(grid_size) + 1) / grid_size
    costs = [float(np.sum(residuals(np.array([phi])) ** 2)) for phi in candidates]
    start = float(candidates[int(np.argmin(costs))])
    logger.debug("fit_phase: coarse grid best %s=%.4f cost %.4e", name, start, min(costs))

    lsq = levenberg_marquardt(residuals, np.array([start]), max_iter=max_iter)
    phi = canonical_phase(params, name, float(lsq.x[0]))
    if not lsq.converged:
        logger.warning("Warning: phase fit did not converge after %d iterations.", lsq.iterations)
    return _result((name,), lsq, apply_parameter(params, name, phi), [phi])


def fit_params(
    measured: Sequence[MeasuredSpectrum],
    free: Iterable[str],
    initial: SystemParams,
    bounds: dict[str, tuple[float, float]] | None = None,
    *,
    max_iter: int = FIT_MAX_ITER,
) -> FitResult:
    """Joint least squares of the named free parameters across all spectra."""
    names = tuple(free)
    unknown = [n for n in names if n not in FIT_PARAMETERS]
    if unknown:
        raise ParameterError([f"unknown fit parameter {n!r}" for n in unknown])
    bounds = bounds or {}
    lower = np.array([bounds.get(n, (_default_lower(n), np.inf))[0] for n in names], dtype=float)
    upper = np.array([bounds.get(n, (_default_lower(n), np.inf))[1] for n in names], dtype=float)
    x0 = np.array([read_parameter(initial, n) for n in names], dtype=float)
    for spec in measured:
        validate(initial, probe=spec.port)

    def residuals(x: np.ndarray) -> np.ndarray:
        return model_residuals(apply_parameters(initial, names, x), measured)

    lsq = levenberg_marquardt(residuals, x0, lower=lower, upper=upper, max_iter=max_iter)
    values = [
        canonical_phase(initial, n, v) if n in PHASE_PARAMETERS else float(v)
        for n, v in zip(names, lsq.x)
    ]
    if lsq.pinned:
        logger.warning(
            "Warning: parameters pinned at bounds: %s",
            ", ".join(names[j] for j in lsq.pinned),
        )
    fitted = apply_parameters(initial, names, values)
    return _result(names, lsq, fitted, values)


def _default_lower(name: str) -> float:
    if name.startswith(("omega", "phi", "coupling_phase")):
        return -np.inf
    return 0.0


def eigvals_from_fit(params: SystemParams) -> tuple[complex, complex]:
    """Eigenvalues of the general effective Hamiltonian built from (fitted) parameters."""
    validate(params)
    return eigvals_general(eliminate_cavity(params))
