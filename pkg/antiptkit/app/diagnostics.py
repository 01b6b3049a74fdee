"""Numeric margins of the approximations behind the anti-PT description."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from ..domain.constants import ASYMMETRY_LIMIT, DOMINANCE_RATIO
from ..domain.effective import antipt_parameters, antipt_residual, eliminate_cavity, ep_kappa
from ..domain.errors import EPUnattainableError
from ..domain.models import ModeParams, SystemParams

Comparison = Literal[">=", "<=", "info"]


@dataclass(frozen=True)
class Diagnostic:
    name: str
    statement: str
    value: float
    limit: float
    comparison: Comparison

    @property
    def ok(self) -> bool:
        if self.comparison == ">=":
            return self.value >= self.limit
        if self.comparison == "<=":
            return self.value <= self.limit
        return True


def _ratio(numerator: float, denominator: float) -> float:
    return math.inf if denominator == 0 else numerator / abs(denominator)


def _relative_difference(a: float, b: float) -> float:
    mean = 0.5 * (a + b)
    return 0.0 if mean == 0 else abs(a - b) / abs(mean)


def passivity_margin(mode: ModeParams, antenna: int, params: SystemParams) -> float:
    """γ_k0·(κ − κ_k) − γ_k1·κ_k; negative means the shared antenna can add energy."""
    kappa_k = params.cavity.port_rate(antenna)
    return mode.gamma_int * (params.kappa - kappa_k) - mode.port_rate(antenna) * kappa_k


def run_diagnostics(params: SystemParams) -> list[Diagnostic]:
    kappa = params.kappa
    sym = antipt_parameters(params)
    d13 = params.cavity.omega - params.magnon1.omega
    d23 = params.cavity.omega - params.magnon2.omega

    rows = [
        Diagnostic("kappa/gamma1", "kappa >> gamma1", _ratio(kappa, params.gamma1), DOMINANCE_RATIO, ">="),
        Diagnostic("kappa/gamma2", "kappa >> gamma2", _ratio(kappa, params.gamma2), DOMINANCE_RATIO, ">="),
        Diagnostic("kappa/|Delta13|", "kappa >> |omega3 - omega1|", _ratio(kappa, d13), DOMINANCE_RATIO, ">="),
        Diagnostic("kappa/|Delta23|", "kappa >> |omega3 - omega2|", _ratio(kappa, d23), DOMINANCE_RATIO, ">="),
        Diagnostic(
            "coupling asymmetry",
            "|g13 - g23| / mean < 5%",
            _relative_difference(params.g13, params.g23),
            ASYMMETRY_LIMIT,
            "<=",
        ),
        Diagnostic(
            "damping asymmetry",
            "|gamma1 - gamma2| / mean < 5%",
            _relative_difference(params.gamma1, params.gamma2),
            ASYMMETRY_LIMIT,
            "<=",
        ),
        Diagnostic(
            "anti-PT residual",
            "max|sigma_x H* sigma_x + H| (traceless) small against max(|Omega|, Gamma)",
            antipt_residual(eliminate_cavity(params)),
            ASYMMETRY_LIMIT * max(abs(sym.Omega), sym.Gamma),
            "<=",
        ),
        Diagnostic(
            "passivity margin 1",
            "gamma10*(kappa - kappa1) >= gamma11*kappa1",
            passivity_margin(params.magnon1, 1, params),
            0.0,
            ">=",
        ),
        Diagnostic(
            "passivity margin 2",
            "gamma20*(kappa - kappa2) >= gamma21*kappa2",
            passivity_margin(params.magnon2, 2, params),
            0.0,
            ">=",
        ),
        Diagnostic("Gamma", "effective dissipative coupling g^2/kappa", sym.Gamma, 0.0, "info"),
        Diagnostic("|Omega|", "half detuning |omega1 - omega2|/2", abs(sym.Omega), 0.0, "info"),
    ]
    try:
        rows.append(Diagnostic("kappa0", "exceptional point g^2/|Omega|", ep_kappa(sym.g, sym.Omega), 0.0, "info"))
    except EPUnattainableError:
        rows.append(Diagnostic("kappa0", "exceptional point g^2/|Omega|", math.inf, 0.0, "info"))
    return rows


def weak_elimination(rows: list[Diagnostic]) -> bool:
    """True when κ is not much larger than the magnon rates or the cavity detunings."""
    return any(not row.ok for row in rows if row.name.startswith("kappa/"))
