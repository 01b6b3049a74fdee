from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from ..domain.constants import KAPPA_CONTROLS
from ..domain.errors import ConfigError, ParameterError
from ..domain.models import BiasField, ModeParams, Port, SystemParams, kittel_frequency, validate, with_kappa

logger = logging.getLogger(__name__)

BUNDLED_CONFIGS = ("table1_magnon_readout", "table1_cavity_readout")
MODE_KEYS = ("magnon1", "magnon2", "cavity")
DEFAULT_ANTENNA = {"magnon1": 1, "magnon2": 2}


@dataclass(frozen=True)
class RunConfig:
    """Parsed config: the resolved parameters plus where they came from."""

    name: str
    description: str
    params: SystemParams
    source: str


def _number(node: dict[str, Any], key: str, pointer: str, *, required: bool = True) -> float | None:
    if key not in node:
        if required:
            raise ConfigError(f"missing required key '{key}'", pointer)
        return None
    value = node[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", f"{pointer}/{key}")
    return float(value)


def _object(node: Any, pointer: str) -> dict[str, Any]:
    if not isinstance(node, dict):
        raise ConfigError(f"expected an object, got {type(node).__name__}", pointer)
    return node


def _parse_omega(node: dict[str, Any], pointer: str) -> tuple[float, bool]:
    """Return (ω in MHz, absolute?) from exactly one of omega_MHz, omega_GHz, bias."""
    given = [key for key in ("omega_MHz", "omega_GHz", "bias") if key in node]
    if len(given) != 1:
        raise ConfigError("exactly one of omega_MHz, omega_GHz, bias is required", pointer)
    key = given[0]
    if key == "omega_MHz":
        return _number(node, key, pointer) or 0.0, False
    if key == "omega_GHz":
        return 1000.0 * (_number(node, key, pointer) or 0.0), True

    bias_pointer = f"{pointer}/bias"
    bias = _object(node["bias"], bias_pointer)
    field = BiasField(
        B=_number(bias, "B_T", bias_pointer) or 0.0,
        gamma0=_number(bias, "gamma0_GHz_per_T", bias_pointer) or 0.0,
        omega_m0=_number(bias, "omega_m0_GHz", bias_pointer, required=False) or 0.0,
    )
    try:
        return 1000.0 * kittel_frequency(field), True
    except ParameterError as exc:
        raise ConfigError(str(exc), bias_pointer) from exc


def _parse_mode(root: dict[str, Any], key: str) -> tuple[ModeParams, dict[int, float], bool]:
    pointer = f"/{key}"
    node = _object(root.get(key), pointer) if key in root else None
    if node is None:
        raise ConfigError(f"missing required section '{key}'", "")
    omega, absolute = _parse_omega(node, pointer)
    gamma_int = _number(node, "gamma_int_MHz", pointer) or 0.0

    raw_ports = node.get("ports", [])
    if not isinstance(raw_ports, list):
        raise ConfigError("expected a list", f"{pointer}/ports")
    ports: list[Port] = []
    phases: dict[int, float] = {}
    for index, raw in enumerate(raw_ports):
        port_pointer = f"{pointer}/ports/{index}"
        entry = _object(raw, port_pointer)
        rate = _number(entry, "rate_MHz", port_pointer) or 0.0
        default = DEFAULT_ANTENNA.get(key, index + 1)
        antenna = entry.get("antenna", default)
        if isinstance(antenna, bool) or antenna not in (1, 2, 3):
            raise ConfigError(f"antenna must be 1, 2 or 3, got {antenna!r}", f"{port_pointer}/antenna")
        if any(p.antenna == antenna for p in ports):
            raise ConfigError(f"antenna {antenna} listed twice", f"{port_pointer}/antenna")
        phase = _number(entry, "phase_rad", port_pointer, required=False)
        if phase is not None:
            if key != "cavity" or antenna == 3:
                raise ConfigError(
                    "phase_rad is only meaningful on cavity ports of antennae 1 and 2",
                    f"{port_pointer}/phase_rad",
                )
            phases[antenna] = phase
        ports.append(Port(antenna=antenna, rate=rate))

    mode = ModeParams(
        label=key,
        omega=omega,
        gamma_int=gamma_int,
        ports=tuple(sorted(ports, key=lambda p: p.antenna)),
    )
    return mode, phases, absolute


def parse_config(data: Any, source: str = "<memory>") -> RunConfig:
    """Turn a decoded JSON tree into validated parameters; errors carry a JSON pointer."""
    root = _object(data, "")
    modes: dict[str, ModeParams] = {}
    phases: dict[int, float] = {}
    frames: set[bool] = set()
    for key in MODE_KEYS:
        mode, mode_phases, absolute = _parse_mode(root, key)
        modes[key] = mode
        phases.update(mode_phases)
        frames.add(absolute)
    if len(frames) > 1:
        raise ConfigError("mix of absolute (GHz/bias) and relative (MHz) frequencies", "")
    absolute = frames.pop() or bool(root.get("absolute", False))

    control = root.get("kappa_control", "antenna3")
    if control not in KAPPA_CONTROLS:
        raise ConfigError(
            f"expected one of {', '.join(KAPPA_CONTROLS)}, got {control!r}", "/kappa_control"
        )

    params = SystemParams(
        magnon1=modes["magnon1"],
        magnon2=modes["magnon2"],
        cavity=modes["cavity"],
        g13=_number(root, "g13_MHz", "") or 0.0,
        g23=_number(root, "g23_MHz", "") or 0.0,
        phi13=phases.get(1, 0.0),
        phi23=phases.get(2, 0.0),
        coupling_phase13=_number(root, "Phi13_rad", "", required=False) or 0.0,
        coupling_phase23=_number(root, "Phi23_rad", "", required=False) or 0.0,
        kappa_control=control,
        absolute=absolute,
    )
    try:
        kappa = _number(root, "kappa_MHz", "", required=False)
        if kappa is not None:
            params = with_kappa(params, kappa)
        validate(params)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc

    name = root.get("name", Path(source).stem if source != "<memory>" else "")
    description = root.get("description", "")
    if not isinstance(name, str) or not isinstance(description, str):
        raise ConfigError("name and description must be strings", "")
    return RunConfig(name=name, description=description, params=params, source=source)


def _read_text(ref: str) -> tuple[str, str]:
    path = Path(ref).expanduser()
    if path.is_file():
        return path.read_text(encoding="utf-8"), str(path.resolve())
    if ref in BUNDLED_CONFIGS:
        resource = resources.files("antiptkit.configs").joinpath(f"{ref}.json")
        return resource.read_text(encoding="utf-8"), f"bundled:{ref}"
    raise ConfigError(
        f"config '{ref}' is neither a file nor a bundled name ({', '.join(BUNDLED_CONFIGS)})"
    )


def load_config(ref: str) -> RunConfig:
    """Load a config by path or bundled name."""
    try:
        text, source = _read_text(ref)
    except OSError as exc:
        raise ConfigError(f"cannot read config '{ref}': {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    config = parse_config(data, source)
    logger.debug("config: loaded %s (kappa=%.6g)", source, config.params.kappa)
    return config


def _mode_snapshot(mode: ModeParams, params: SystemParams) -> dict[str, Any]:
    ports = []
    for port in mode.ports:
        entry: dict[str, Any] = {"antenna": port.antenna, "rate_MHz": port.rate}
        if mode.label == "cavity" and port.antenna == 1:
            entry["phase_rad"] = params.phi13
        elif mode.label == "cavity" and port.antenna == 2:
            entry["phase_rad"] = params.phi23
        ports.append(entry)
    return {"omega_MHz": mode.omega, "gamma_int_MHz": mode.gamma_int, "ports": ports}


def params_to_config(params: SystemParams, name: str = "", description: str = "") -> dict[str, Any]:
    """Fully resolved snapshot; parse_config(params_to_config(p)) reproduces p.

    The total κ is informational only; the port rates already carry it.
    """
    return {
        "name": name,
        "description": description,
        "absolute": params.absolute,
        "kappa_control": params.kappa_control,
        "kappa_total_MHz": params.kappa,
        "magnon1": _mode_snapshot(params.magnon1, params),
        "magnon2": _mode_snapshot(params.magnon2, params),
        "cavity": _mode_snapshot(params.cavity, params),
        "g13_MHz": params.g13,
        "g23_MHz": params.g23,
        "Phi13_rad": params.coupling_phase13,
        "Phi23_rad": params.coupling_phase23,
    }
