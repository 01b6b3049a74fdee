from __future__ import annotations

from dataclasses import replace

import numpy as np

from antiptkit.domain.models import ModeParams, Port, SystemParams, with_kappa
from antiptkit.infra.config import load_config


def magnon_readout(kappa: float | None = None) -> SystemParams:
    """Bundled magnon-readout parameters, optionally at another total kappa."""
    params = load_config("table1_magnon_readout").params
    return params if kappa is None else with_kappa(params, kappa)


def cavity_readout(kappa: float | None = None) -> SystemParams:
    params = load_config("table1_cavity_readout").params
    return params if kappa is None else with_kappa(params, kappa)


def symmetric_params(kappa: float = 60.0, omega: float = 2.0, g: float = 6.0) -> SystemParams:
    """ω1 = −ω2, equal rates and couplings, magnon and cavity antennae on both sides."""
    return SystemParams(
        magnon1=ModeParams("magnon1", omega, 1.0, (Port(1, 1.0),)),
        magnon2=ModeParams("magnon2", -omega, 1.0, (Port(2, 1.0),)),
        cavity=ModeParams("cavity", 0.0, 2.0, (Port(1, 0.5), Port(2, 0.5), Port(3, kappa - 3.0))),
        g13=g,
        g23=g,
    )


def decoupled(params: SystemParams) -> SystemParams:
    """No magnon-cavity coupling and no antenna leakage into the cavity."""
    cavity = params.cavity.with_port_rate(1, 0.0).with_port_rate(2, 0.0)
    return replace(params, g13=0.0, g23=0.0, cavity=cavity)


def random_params(rng: np.random.Generator) -> SystemParams:
    """Random passive configuration: γk1 ≤ γk0 and κ_int ≥ κ1 + κ2, no coupling phases."""
    gamma10 = rng.uniform(0.2, 3.0)
    gamma20 = rng.uniform(0.2, 3.0)
    kappa1 = rng.uniform(0.0, 2.0)
    kappa2 = rng.uniform(0.0, 2.0)
    kappa_int = kappa1 + kappa2 + rng.uniform(0.1, 5.0)
    return SystemParams(
        magnon1=ModeParams(
            "magnon1", rng.uniform(-10, 10), gamma10, (Port(1, rng.uniform(0.05, 1.0) * gamma10),)
        ),
        magnon2=ModeParams(
            "magnon2", rng.uniform(-10, 10), gamma20, (Port(2, rng.uniform(0.05, 1.0) * gamma20),)
        ),
        cavity=ModeParams(
            "cavity",
            rng.uniform(-5, 5),
            kappa_int,
            (Port(1, kappa1), Port(2, kappa2), Port(3, rng.uniform(0.1, 100.0))),
        ),
        g13=rng.uniform(0.0, 10.0),
        g23=rng.uniform(0.0, 10.0),
        phi13=rng.uniform(-np.pi, np.pi),
        phi23=rng.uniform(-np.pi, np.pi),
    )
