"""κ sweeps: eigenvalue trajectories, exceptional-point location and level attraction."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Literal, Sequence

import numpy as np
from scipy.optimize import bisect

from .constants import EP_RTOL, GRID_POINTS, PIPELINES
from .dips import DipReport, combined_spectrum, dip_analysis
from .effective import (
    PhaseRegime,
    antipt_parameters,
    classify_phase,
    discriminant,
    eigvals_antipt,
    eigvals_general,
    eliminate_cavity,
    order_pair,
    reduce_to_antipt,
)
from .errors import BracketError, ParameterError
from .models import SystemParams, build_dynamical_matrix, params_digest, with_kappa
from .scattering import (
    ProbeSpec,
    Spectrum,
    default_grid,
    reflection_cavity_effective,
    reflection_effective,
    spectrum,
)

logger = logging.getLogger(__name__)

Pipeline = Literal["antipt", "effective", "full"]
Pair = tuple[complex, complex]
Mapper = Callable[[Callable, Iterable], Iterator]


@dataclass(frozen=True)
class SweepPlan:
    values: tuple[float, ...]
    base: SystemParams
    pipeline: Pipeline = "antipt"
    parameter: str = "kappa"

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        problems: list[str] = []
        if self.parameter != "kappa":
            problems.append(f"only kappa sweeps are supported, got {self.parameter!r}")
        if self.pipeline not in PIPELINES:
            problems.append(f"unknown pipeline {self.pipeline!r}")
        if not values:
            problems.append("sweep needs at least one kappa value")
        elif any(v <= 0 for v in values):
            problems.append("kappa values must be positive")
        else:
            steps = np.diff(values)
            if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
                problems.append("kappa values must be strictly monotone")
        if problems:
            raise ParameterError(problems)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class EPEstimate:
    kappa: float
    bracket: tuple[float, float]


@dataclass(frozen=True)
class SweepPoint:
    kappa: float
    pair: Pair
    discriminant: complex
    regime: PhaseRegime


@dataclass(frozen=True)
class EigenTrajectory:
    values: tuple[float, ...]
    pairs: tuple[Pair, ...]
    regimes: tuple[PhaseRegime, ...]
    pipeline: Pipeline
    ep_estimate: EPEstimate | None = None

    def __len__(self) -> int:
        return len(self.values)

    @property
    def real_splitting(self) -> np.ndarray:
        return np.array([abs(a.real - b.real) for a, b in self.pairs])

    @property
    def imag_splitting(self) -> np.ndarray:
        return np.array([abs(a.imag - b.imag) for a, b in self.pairs])


@dataclass(frozen=True)
class AttractionRow:
    kappa: float
    separation: float
    mean_fwhm: float
    resolvable: bool
    regime: str
    dips: int


def _full_pair(params: SystemParams) -> Pair:
    # Eigenvalues of i·M are the complex mode frequencies ω − iγ.
    values, vectors = np.linalg.eig(1j * build_dynamical_matrix(params).M)
    cavity_weight = np.abs(vectors[2, :])
    first, second = np.argsort(cavity_weight, kind="stable")[:2]
    center = params.frame_center
    return order_pair(complex(values[first]) - center, complex(values[second]) - center)


def _regime_from_discriminant(disc: complex, scale: float, tol: float = EP_RTOL) -> PhaseRegime:
    margin = tol * max(scale * scale, abs(disc), 1e-300)
    if disc.real > margin:
        return PhaseRegime("broken", disc.real)
    if disc.real < -margin:
        return PhaseRegime("symmetric", disc.real)
    return PhaseRegime("exceptional", disc.real)


def eigenpair_at(base: SystemParams, kappa: float, pipeline: Pipeline = "antipt") -> SweepPoint:
    """Canonically ordered eigenvalue pair at one κ, in the frame rotating at (ω1+ω2)/2."""
    params = with_kappa(base, kappa)
    sym = antipt_parameters(params)
    if pipeline == "antipt":
        pair = eigvals_antipt(sym.Omega, sym.Gamma, sym.gamma)
        return SweepPoint(kappa, pair, discriminant(pair), classify_phase(sym.Omega, sym.Gamma))
    if pipeline == "effective":
        center = params.frame_center
        a, b = eigvals_general(eliminate_cavity(params))
        pair = order_pair(a - center, b - center)
    elif pipeline == "full":
        pair = _full_pair(params)
    else:
        raise ParameterError([f"unknown pipeline {pipeline!r}"])
    disc = discriminant(pair)
    return SweepPoint(kappa, pair, disc, _regime_from_discriminant(disc, abs(sym.Omega)))


def _evaluate(task: tuple[SystemParams, float, Pipeline]) -> SweepPoint:
    base, kappa, pipeline = task
    return eigenpair_at(base, kappa, pipeline)


def match_branches(previous: Pair, current: Pair) -> Pair:
    """Order `current` to follow `previous` by the smaller total distance of the two pairings."""
    keep = abs(current[0] - previous[0]) + abs(current[1] - previous[1])
    swap = abs(current[1] - previous[0]) + abs(current[0] - previous[1])
    return current if keep <= swap else (current[1], current[0])


def assemble_trajectory(
    points: Sequence[SweepPoint],
    base: SystemParams,
    pipeline: Pipeline,
    *,
    refine: bool = True,
) -> EigenTrajectory:
    """Sequential pass over ordered per-κ results: branch matching, then the EP estimate."""
    pairs: list[Pair] = []
    for point in points:
        pairs.append(point.pair if not pairs else match_branches(pairs[-1], point.pair))

    estimate: EPEstimate | None = None
    for left, right in zip(points, points[1:]):
        d_left, d_right = left.discriminant.real, right.discriminant.real
        if d_left == 0.0:
            estimate = EPEstimate(left.kappa, (left.kappa, left.kappa))
            break
        if d_left * d_right < 0:
            bracket = (min(left.kappa, right.kappa), max(left.kappa, right.kappa))
            kappa0 = locate_ep(base, bracket, pipeline=pipeline) if refine else 0.5 * sum(bracket)
            estimate = EPEstimate(kappa0, bracket)
            break

    return EigenTrajectory(
        values=tuple(p.kappa for p in points),
        pairs=tuple(pairs),
        regimes=tuple(p.regime for p in points),
        pipeline=pipeline,
        ep_estimate=estimate,
    )


def run_sweep(
    plan: SweepPlan,
    mapper: Mapper = map,
    on_point: Callable[[SweepPoint], None] | None = None,
) -> EigenTrajectory:
    """Evaluate every κ of the plan; `mapper` must preserve order (map, Pool.imap)."""
    tasks = [(plan.base, kappa, plan.pipeline) for kappa in plan.values]
    points: list[SweepPoint] = []
    for point in mapper(_evaluate, tasks):
        logger.debug("sweep: kappa=%.6g regime=%s", point.kappa, point.regime.regime)
        if on_point is not None:
            on_point(point)
        points.append(point)
    return assemble_trajectory(points, plan.base, plan.pipeline)


def locate_ep(
    base: SystemParams,
    bracket: tuple[float, float],
    tol: float = 0.01,
    pipeline: Pipeline = "antipt",
) -> float:
    """κ0 where the real part of ((λ+ − λ−)/2)² vanishes, bisected to width `tol`."""
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0 < lo < hi:
        raise ParameterError([f"bracket must satisfy 0 < lo < hi, got ({lo:g}, {hi:g})"])
    if not tol > 0:
        raise ParameterError([f"tolerance must be positive, got {tol:g}"])

    def real_discriminant(kappa: float) -> float:
        return eigenpair_at(base, kappa, pipeline).discriminant.real

    f_lo = real_discriminant(lo)
    f_hi = real_discriminant(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise BracketError(
            f"discriminant does not change sign on ({lo:g}, {hi:g}) for pipeline {pipeline}"
        )
    kappa0 = float(bisect(real_discriminant, lo, hi, xtol=tol))
    logger.debug("locate_ep: kappa0=%.6g on (%g, %g) pipeline=%s", kappa0, lo, hi, pipeline)
    return kappa0


def attraction_window(base: SystemParams) -> tuple[float, float]:
    """Frequencies that can hold a magnon-branch dip: center ± (|Ω| + γ̄)."""
    sym = antipt_parameters(base)
    reach = abs(sym.Omega) + sym.gamma
    center = base.frame_center
    return center - reach, center + reach


def _effective_spectrum(
    H: np.ndarray,
    params: SystemParams,
    index: int,
    grid: np.ndarray,
    shift: float,
) -> Spectrum:
    rates = (params.magnon1.port_rate(1), params.magnon2.port_rate(2))
    t = np.asarray(reflection_effective(H, rates, index, grid - shift), dtype=complex)
    return Spectrum(
        port=("magnon1", "magnon2")[index],
        omega=grid,
        magnitude=np.abs(t),
        t=t,
        params_hash=params_digest(params),
    )


def _effective_cavity_spectrum(params: SystemParams, grid: np.ndarray, pipeline: Pipeline) -> Spectrum:
    if pipeline == "effective":
        H = eliminate_cavity(params).H
        into = (
            params.g13 * np.exp(1j * params.coupling_phase13),
            params.g23 * np.exp(1j * params.coupling_phase23),
        )
        out = (params.g13, params.g23)
        shift = 0.0
    else:
        H = reduce_to_antipt(params).H
        g = antipt_parameters(params).g
        into = out = (g, g)
        shift = params.frame_center
    t = np.asarray(
        reflection_cavity_effective(
            H,
            into,
            out,
            params.kappa,
            params.cavity.port_rate(3),
            params.cavity.omega - shift,
            grid - shift,
        ),
        dtype=complex,
    )
    return Spectrum(
        port="cavity",
        omega=grid,
        magnitude=np.abs(t),
        t=t,
        params_hash=params_digest(params),
    )


def attraction_spectrum(
    params: SystemParams,
    grid: np.ndarray,
    pipeline: Pipeline = "full",
) -> Spectrum:
    """Combined magnon-port spectrum; cavity port when the config has no magnon antennae."""
    if pipeline not in PIPELINES:
        raise ParameterError([f"unknown pipeline {pipeline!r}"])
    has_magnon_ports = params.magnon1.port_rate(1) > 0 and params.magnon2.port_rate(2) > 0
    if not has_magnon_ports:
        if pipeline == "full":
            return spectrum(params, ProbeSpec("cavity", grid))
        return _effective_cavity_spectrum(params, grid, pipeline)
    if pipeline == "full":
        s11 = spectrum(params, ProbeSpec("magnon1", grid))
        s22 = spectrum(params, ProbeSpec("magnon2", grid))
    elif pipeline == "effective":
        H = eliminate_cavity(params).H
        s11 = _effective_spectrum(H, params, 0, grid, 0.0)
        s22 = _effective_spectrum(H, params, 1, grid, 0.0)
    else:
        H = reduce_to_antipt(params).H
        s11 = _effective_spectrum(H, params, 0, grid, params.frame_center)
        s22 = _effective_spectrum(H, params, 1, grid, params.frame_center)
    return combined_spectrum(s11, s22)


def level_attraction_report(
    base: SystemParams,
    kappa_values: Sequence[float],
    pipeline: Pipeline = "full",
    *,
    points: int = GRID_POINTS,
    window: tuple[float, float] | None = None,
) -> list[AttractionRow]:
    """Dip separation against mean FWHM of the combined spectrum at each κ.

    Spectra cover the default probe grid; dips are only taken from `window`, which
    keeps cavity-like polariton dips of the full model out of the table.
    """
    if not kappa_values:
        raise ParameterError(["level attraction report needs at least one kappa value"])
    dip_window = attraction_window(base) if window is None else window
    grid = default_grid(base, points=points)

    rows: list[AttractionRow] = []
    for kappa in kappa_values:
        params = with_kappa(base, kappa)
        report: DipReport = dip_analysis(
            attraction_spectrum(params, grid, pipeline), window=dip_window
        )
        regime = eigenpair_at(base, kappa, pipeline).regime.regime
        rows.append(
            AttractionRow(
                kappa=float(kappa),
                separation=report.separation,
                mean_fwhm=report.mean_fwhm,
                resolvable=report.resolvable,
                regime=regime,
                dips=len(report.dips),
            )
        )
        logger.debug(
            "attraction: kappa=%.4g separation=%.4g fwhm=%.4g", kappa, report.separation, report.mean_fwhm
        )
    return rows
