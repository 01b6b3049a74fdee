from __future__ import annotations

import logging
from multiprocessing import Pool
from typing import Sequence

import numpy as np

from ..domain.errors import BracketError, ParameterError
from ..domain.models import SystemParams
from ..domain.sweep import (
    AttractionRow,
    EigenTrajectory,
    Pipeline,
    SweepPlan,
    eigenpair_at,
    level_attraction_report,
    locate_ep,
    run_sweep,
)
from .progress import ProgressCallback, tracked

logger = logging.getLogger(__name__)

EP_SCAN_POINTS = 400
EP_SCAN_MAX_MHZ = 1.0e4


def kappa_grid(kappa_min: float, kappa_max: float, steps: int) -> np.ndarray:
    """Evenly spaced κ values; a single step means κ_min alone."""
    problems: list[str] = []
    if steps < 1:
        problems.append(f"kappa steps must be at least 1, got {steps}")
    if not kappa_min > 0:
        problems.append(f"kappa-min must be positive, got {kappa_min:g}")
    if kappa_max < kappa_min or (steps > 1 and kappa_max == kappa_min):
        problems.append(f"empty kappa range [{kappa_min:g}, {kappa_max:g}]")
    if problems:
        raise ParameterError(problems)
    return np.linspace(kappa_min, kappa_max, steps)


def sweep_kappa(
    base: SystemParams,
    values: Sequence[float],
    pipeline: Pipeline = "antipt",
    *,
    jobs: int = 1,
    progress: ProgressCallback | None = None,
) -> EigenTrajectory:
    """Run a κ sweep, evaluating points on a process pool when jobs > 1."""
    plan = SweepPlan(values=tuple(values), base=base, pipeline=pipeline)
    total = len(plan.values)
    if jobs <= 1:

        def serial(fn, tasks):
            return tracked(map(fn, tasks), total, progress)

        return run_sweep(plan, mapper=serial)

    chunksize = max(1, total // (4 * jobs))
    with Pool(processes=jobs) as pool:

        def pooled(fn, tasks):
            return tracked(pool.imap(fn, tasks, chunksize=chunksize), total, progress)

        return run_sweep(plan, mapper=pooled)


def kappa_floor(base: SystemParams) -> float:
    """Smallest total κ the control rule can realize."""
    cavity = base.cavity
    other_ports = sum(p.rate for p in cavity.ports if p.antenna != 3)
    if base.kappa_control == "critical":
        return other_ports
    return cavity.gamma_int + other_ports


def default_ep_bracket(base: SystemParams, pipeline: Pipeline = "antipt") -> tuple[float, float]:
    """First sign change of the discriminant on a geometric κ scan."""
    start = max(1.001 * kappa_floor(base), 1e-3)
    scan = np.geomspace(start, EP_SCAN_MAX_MHZ, EP_SCAN_POINTS)
    previous = None
    for kappa in scan:
        value = eigenpair_at(base, float(kappa), pipeline).discriminant.real
        if previous is not None and previous[1] * value <= 0:
            return previous[0], float(kappa)
        previous = (float(kappa), value)
    raise BracketError(
        f"no exceptional point between kappa={start:.4g} and {EP_SCAN_MAX_MHZ:g} MHz "
        f"for pipeline {pipeline}"
    )


def find_ep(
    base: SystemParams,
    pipeline: Pipeline = "antipt",
    bracket: tuple[float, float] | None = None,
    tol: float = 0.01,
) -> tuple[float, tuple[float, float]]:
    bracket = bracket or default_ep_bracket(base, pipeline)
    kappa0 = locate_ep(base, bracket, tol=tol, pipeline=pipeline)
    logger.debug("find_ep: kappa0=%.6g bracket=(%.6g, %.6g)", kappa0, *bracket)
    return kappa0, bracket


def attraction_table(
    base: SystemParams,
    values: Sequence[float],
    pipeline: Pipeline = "full",
    *,
    progress: ProgressCallback | None = None,
) -> list[AttractionRow]:
    rows: list[AttractionRow] = []
    for kappa in tracked(values, len(values), progress):
        rows.extend(level_attraction_report(base, [float(kappa)], pipeline))
    return rows
