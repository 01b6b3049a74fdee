from __future__ import annotations

from ..domain.sweep import AttractionRow, EigenTrajectory
from .numbers import fmt

TRAJECTORY_HEADER = "kappa_MHz,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus,regime"
ATTRACTION_HEADER = "kappa_MHz,separation_MHz,mean_fwhm_MHz,resolvable,regime"


def render_trajectory_csv(trajectory: EigenTrajectory) -> str:
    lines = [TRAJECTORY_HEADER]
    for kappa, (plus, minus), regime in zip(trajectory.values, trajectory.pairs, trajectory.regimes):
        lines.append(
            f"{fmt(kappa)},{fmt(plus.real)},{fmt(plus.imag)},"
            f"{fmt(minus.real)},{fmt(minus.imag)},{regime.regime}"
        )
    return "\n".join(lines) + "\n"


def render_attraction_csv(rows: list[AttractionRow]) -> str:
    lines = [ATTRACTION_HEADER]
    for row in rows:
        lines.append(
            f"{fmt(row.kappa)},{fmt(row.separation)},{fmt(row.mean_fwhm)},"
            f"{'true' if row.resolvable else 'false'},{row.regime}"
        )
    return "\n".join(lines) + "\n"


def render_ep_summary(trajectory: EigenTrajectory) -> str:
    estimate = trajectory.ep_estimate
    if estimate is None:
        return f"No exceptional point crossed in {len(trajectory)} kappa values ({trajectory.pipeline})."
    lo, hi = estimate.bracket
    return (
        f"Exceptional point: kappa0 = {estimate.kappa:.4f} MHz "
        f"(bracket {lo:.4g}..{hi:.4g}, pipeline {trajectory.pipeline})"
    )
