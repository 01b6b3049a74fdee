"""Damped Gauss-Newton (Levenberg-Marquardt) least squares with box bounds.

Every accepted step lowers the cost; rejected steps only raise the damping.
"""

from __future__ import annotations

import logging
from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import (
    FD_REL_STEP,
    FIT_FTOL,
    FIT_GTOL,
    FIT_MAX_ITER,
    LM_DAMPING_FACTOR,
    LM_DAMPING_INIT,
)

logger = logging.getLogger(__name__)

ResidualFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LeastSquaresResult:
    x: np.ndarray
    cost: float
    residuals: np.ndarray
    jacobian: np.ndarray
    iterations: int
    converged: bool
    gradient_norm: float
    history: tuple[float, ...]
    pinned: tuple[int, ...]


def fd_step(x: np.ndarray, rel_step: float = FD_REL_STEP) -> np.ndarray:
    return rel_step * np.maximum(np.abs(x), 1.0)


def finite_difference_jacobian(
    fn: ResidualFn,
    x: np.ndarray,
    step: np.ndarray | None = None,
    executor: Executor | None = None,
) -> np.ndarray:
    """Central differences; columns may be evaluated on an executor, assembly is ordered."""
    x = np.asarray(x, dtype=float)
    h = fd_step(x) if step is None else np.asarray(step, dtype=float)

    def column(j: int) -> np.ndarray:
        up = x.copy()
        down = x.copy()
        up[j] += h[j]
        down[j] -= h[j]
        return (fn(up) - fn(down)) / (2.0 * h[j])

    if executor is None:
        columns = [column(j) for j in range(x.size)]
    else:
        columns = list(executor.map(column, range(x.size)))
    if not columns:
        return np.zeros((fn(x).size, 0))
    return np.column_stack(columns)


def _clip(x: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    return np.minimum(np.maximum(x, lower), upper)


def levenberg_marquardt(
    fn: ResidualFn,
    x0: np.ndarray,
    *,
    lower: np.ndarray | None = None,
    upper: np.ndarray | None = None,
    max_iter: int = FIT_MAX_ITER,
    ftol: float = FIT_FTOL,
    gtol: float = FIT_GTOL,
    executor: Executor | None = None,
) -> LeastSquaresResult:
    x = np.asarray(x0, dtype=float).copy()
    n = x.size
    lower = np.full(n, -np.inf) if lower is None else np.asarray(lower, dtype=float)
    upper = np.full(n, np.inf) if upper is None else np.asarray(upper, dtype=float)
    x = _clip(x, lower, upper)

    r = fn(x)
    cost = float(r @ r)
    history = [cost]
    if n == 0:
        return LeastSquaresResult(
            x=x, cost=cost, residuals=r, jacobian=np.zeros((r.size, 0)), iterations=0,
            converged=True, gradient_norm=0.0, history=tuple(history), pinned=(),
        )

    damping = LM_DAMPING_INIT
    J = finite_difference_jacobian(fn, x, executor=executor)
    converged = False
    iterations = 0
    gradient_norm = float(np.linalg.norm(J.T @ r))

    while iterations < max_iter:
        if gradient_norm < gtol or cost == 0.0:
            converged = True
            break
        iterations += 1
        JtJ = J.T @ J
        g = J.T @ r
        accepted = False
        while not accepted:
            A = JtJ + damping * np.diag(np.maximum(np.diag(JtJ), 1e-300))
            try:
                step = -np.linalg.solve(A, g)
            except np.linalg.LinAlgError:
                step = -np.linalg.lstsq(A, g, rcond=None)[0]
            candidate = _clip(x + step, lower, upper)
            r_new = fn(candidate)
            cost_new = float(r_new @ r_new)
            if np.isfinite(cost_new) and cost_new <= cost:
                accepted = True
                damping = max(damping / LM_DAMPING_FACTOR, 1e-15)
            else:
                damping *= LM_DAMPING_FACTOR
                if damping > 1e15:
                    break
        if not accepted:
            logger.debug("lm: damping exhausted at iteration %d, cost %.6e", iterations, cost)
            break

        relative_change = (cost - cost_new) / cost if cost > 0 else 0.0
        x, r, cost = candidate, r_new, cost_new
        history.append(cost)
        J = finite_difference_jacobian(fn, x, executor=executor)
        gradient_norm = float(np.linalg.norm(J.T @ r))
        logger.debug("lm: iteration %d cost %.6e damping %.1e", iterations, cost, damping)
        if relative_change < ftol or gradient_norm < gtol:
            converged = True
            break

    pinned = tuple(
        int(j) for j in range(n)
        if np.isclose(x[j], lower[j]) or np.isclose(x[j], upper[j])
    )
    return LeastSquaresResult(
        x=x,
        cost=cost,
        residuals=r,
        jacobian=J,
        iterations=iterations,
        converged=converged,
        gradient_norm=gradient_norm,
        history=tuple(history),
        pinned=pinned,
    )


def sensitivities(result: LeastSquaresResult) -> np.ndarray:
    """Standard-error proxies sqrt(diag((JᵀJ)⁻¹)·s²) with s² = cost/(m − n)."""
    J = result.jacobian
    m, n = J.shape
    if n == 0:
        return np.zeros(0)
    dof = max(m - n, 1)
    covariance = np.linalg.pinv(J.T @ J) * (result.cost / dof)
    return np.sqrt(np.maximum(np.diag(covariance), 0.0))
