from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace
from typing import Literal

import numpy as np

from .constants import KAPPA_CONTROLS
from .errors import ParameterError

KappaControl = Literal["antenna3", "critical"]
ProbePort = Literal["magnon1", "magnon2", "cavity"]


@dataclass(frozen=True)
class Port:
    antenna: int
    rate: float


@dataclass(frozen=True)
class ModeParams:
    """One lossy resonator. Rates are amplitude decay rates in MHz (2π·MHz units)."""

    label: str
    omega: float
    gamma_int: float
    ports: tuple[Port, ...] = ()

    @property
    def total(self) -> float:
        return self.gamma_int + sum(port.rate for port in self.ports)

    def port_rate(self, antenna: int) -> float:
        return sum(port.rate for port in self.ports if port.antenna == antenna)

    def with_port_rate(self, antenna: int, rate: float) -> ModeParams:
        others = tuple(port for port in self.ports if port.antenna != antenna)
        ports = tuple(sorted(others + (Port(antenna, rate),), key=lambda p: p.antenna))
        return replace(self, ports=ports)


@dataclass(frozen=True)
class SystemParams:
    magnon1: ModeParams
    magnon2: ModeParams
    cavity: ModeParams
    g13: float
    g23: float
    phi13: float = 0.0
    phi23: float = 0.0
    coupling_phase13: float = 0.0
    coupling_phase23: float = 0.0
    kappa_control: KappaControl = "antenna3"
    absolute: bool = False

    @property
    def gamma1(self) -> float:
        return self.magnon1.total

    @property
    def gamma2(self) -> float:
        return self.magnon2.total

    @property
    def kappa(self) -> float:
        return self.cavity.total

    @property
    def frame_center(self) -> float:
        """Rotating-frame frequency (ω1+ω2)/2."""
        return 0.5 * (self.magnon1.omega + self.magnon2.omega)


@dataclass(frozen=True)
class BiasField:
    B: float
    gamma0: float
    omega_m0: float = 0.0


@dataclass(frozen=True)
class DynamicalMatrix:
    M: np.ndarray
    ordering: tuple[str, str, str] = field(default=("magnon1", "magnon2", "cavity"))


def _mode_violations(mode: ModeParams, *, absolute: bool) -> list[str]:
    problems: list[str] = []
    if absolute and mode.omega <= 0:
        problems.append(f"{mode.label}: non-positive frequency {mode.omega:g}")
    if mode.gamma_int < 0:
        problems.append(f"{mode.label}: negative intrinsic rate {mode.gamma_int:g}")
    for port in mode.ports:
        if port.rate < 0:
            problems.append(f"{mode.label}: negative rate {port.rate:g} on antenna {port.antenna}")
    if mode.total <= 0:
        problems.append(f"{mode.label}: mode has zero total decay")
    return problems


def validate(params: SystemParams, probe: ProbePort | None = None) -> SystemParams:
    """Return params unchanged if every invariant holds, else raise with all violations."""
    problems: list[str] = []
    for mode in (params.magnon1, params.magnon2, params.cavity):
        problems.extend(_mode_violations(mode, absolute=params.absolute))
    if params.g13 < 0:
        problems.append(f"g13: negative coupling rate {params.g13:g}")
    if params.g23 < 0:
        problems.append(f"g23: negative coupling rate {params.g23:g}")
    if params.kappa_control not in KAPPA_CONTROLS:
        problems.append(f"kappa_control: unknown rule {params.kappa_control!r}")

    if probe == "magnon1" and params.magnon1.port_rate(1) <= 0:
        problems.append("magnon1: empty port list, no readout antenna 1")
    elif probe == "magnon2" and params.magnon2.port_rate(2) <= 0:
        problems.append("magnon2: empty port list, no readout antenna 2")
    elif probe == "cavity" and params.cavity.port_rate(3) <= 0:
        problems.append("cavity: empty port list, no readout antenna 3")

    if problems:
        raise ParameterError(problems)
    return params


def kittel_frequency(bias: BiasField) -> float:
    """Kittel-mode frequency in GHz: γ0·B + ω_m0."""
    if bias.B < 0 or bias.gamma0 <= 0:
        raise ParameterError([f"invalid bias field B={bias.B:g} T, gamma0={bias.gamma0:g} GHz/T"])
    return bias.gamma0 * bias.B + bias.omega_m0


def build_dynamical_matrix(params: SystemParams) -> DynamicalMatrix:
    """3×3 matrix M of dx/dt = M x in the order (magnon1, magnon2, cavity)."""
    g13_up = params.g13 * np.exp(1j * params.coupling_phase13)
    g23_up = params.g23 * np.exp(1j * params.coupling_phase23)
    M = np.array(
        [
            [-(1j * params.magnon1.omega + params.gamma1), 0.0, -1j * g13_up],
            [0.0, -(1j * params.magnon2.omega + params.gamma2), -1j * g23_up],
            [-1j * params.g13, -1j * params.g23, -(1j * params.cavity.omega + params.kappa)],
        ],
        dtype=complex,
    )
    M.setflags(write=False)
    return DynamicalMatrix(M=M)


def with_kappa(params: SystemParams, kappa: float) -> SystemParams:
    """Realize a total cavity rate through the config's control rule."""
    cavity = params.cavity
    if params.kappa_control == "critical":
        fixed = sum(port.rate for port in cavity.ports if port.antenna != 3)
        half = 0.5 * (kappa - fixed)
        if half < 0:
            raise ParameterError([f"kappa {kappa:g} below fixed cavity port losses {fixed:g}"])
        cavity = replace(cavity.with_port_rate(3, half), gamma_int=half)
    else:
        fixed = cavity.gamma_int + sum(port.rate for port in cavity.ports if port.antenna != 3)
        rate = kappa - fixed
        if rate < 0:
            raise ParameterError([f"kappa {kappa:g} below fixed cavity losses {fixed:g}"])
        cavity = cavity.with_port_rate(3, rate)
    return replace(params, cavity=cavity)


def swap_magnons(params: SystemParams) -> SystemParams:
    """Relabel magnon1 <-> magnon2, including antennae 1 <-> 2 and their phases."""

    def swap_ports(ports: tuple[Port, ...]) -> tuple[Port, ...]:
        mapping = {1: 2, 2: 1}
        swapped = (Port(mapping.get(p.antenna, p.antenna), p.rate) for p in ports)
        return tuple(sorted(swapped, key=lambda p: p.antenna))

    return replace(
        params,
        magnon1=replace(params.magnon2, label="magnon1", ports=swap_ports(params.magnon2.ports)),
        magnon2=replace(params.magnon1, label="magnon2", ports=swap_ports(params.magnon1.ports)),
        cavity=replace(params.cavity, ports=swap_ports(params.cavity.ports)),
        g13=params.g23,
        g23=params.g13,
        phi13=params.phi23,
        phi23=params.phi13,
        coupling_phase13=params.coupling_phase23,
        coupling_phase23=params.coupling_phase13,
    )


def params_digest(params: SystemParams) -> str:
    payload = json.dumps(asdict(params), sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]
