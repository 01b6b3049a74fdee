"""Steady-state input-output theory for the three probe ports.

Conventions: rates are amplitude decay rates, an antenna with rate r drives a mode
with sqrt(2r)·s and the reflected field is s_out = -s_in + sum(sqrt(2r)·x).
Detunings are Δi = ωi − ωp.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import GRID_HALF_WIDTH_MHZ, GRID_POINTS, PROBE_PORTS
from .errors import ParameterError, SingularSystemError
from .models import ProbePort, SystemParams, build_dynamical_matrix, params_digest, validate


@dataclass(frozen=True)
class ProbeSpec:
    port: ProbePort
    grid: np.ndarray
    drive: float = 1.0

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        problems: list[str] = []
        if self.port not in PROBE_PORTS:
            problems.append(f"unknown probe port {self.port!r}")
        if grid.ndim != 1 or grid.size == 0:
            problems.append("probe grid must be a non-empty 1-D list")
        elif grid.size > 1 and not np.all(np.diff(grid) > 0):
            problems.append("probe grid must be strictly increasing")
        if not self.drive > 0:
            problems.append(f"drive amplitude must be positive, got {self.drive:g}")
        if problems:
            raise ParameterError(problems)
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)


@dataclass(frozen=True)
class Spectrum:
    """Reflection spectrum; t is None for derived (combined) spectra."""

    port: str
    omega: np.ndarray
    magnitude: np.ndarray
    t: np.ndarray | None
    params_hash: str

    def __len__(self) -> int:
        return int(self.omega.size)

    @property
    def magnitude_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(self.magnitude)


def default_grid(
    params: SystemParams,
    half_width: float = GRID_HALF_WIDTH_MHZ,
    points: int = GRID_POINTS,
) -> np.ndarray:
    center = params.frame_center
    return np.linspace(center - half_width, center + half_width, points)


def drive_vector(params: SystemParams, port: ProbePort, s: float = 1.0) -> np.ndarray:
    """Input coupling of one antenna to (magnon1, magnon2, cavity)."""
    if port == "magnon1":
        return s * np.array(
            [
                np.sqrt(2 * params.magnon1.port_rate(1)),
                0.0,
                np.sqrt(2 * params.cavity.port_rate(1)) * np.exp(-1j * params.phi13),
            ],
            dtype=complex,
        )
    if port == "magnon2":
        return s * np.array(
            [
                0.0,
                np.sqrt(2 * params.magnon2.port_rate(2)),
                np.sqrt(2 * params.cavity.port_rate(2)) * np.exp(-1j * params.phi23),
            ],
            dtype=complex,
        )
    if port == "cavity":
        return s * np.array([0.0, 0.0, np.sqrt(2 * params.cavity.port_rate(3))], dtype=complex)
    raise ParameterError([f"unknown probe port {port!r}"])


def steady_state(params: SystemParams, probe: ProbeSpec, omega_p: float) -> np.ndarray:
    """Solve 0 = M(ωp)·x + drive for x = (a, b, c)."""
    M = build_dynamical_matrix(params).M + 1j * omega_p * np.eye(3)
    drive = drive_vector(params, probe.port, probe.drive)
    try:
        x = np.linalg.solve(-M, drive)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"steady state is singular at omega_p={omega_p:g}") from exc
    residual = np.max(np.abs(-M @ x - drive))
    if residual > 1e-10 * max(np.max(np.abs(drive)), 1.0):
        raise SingularSystemError(f"steady state residual {residual:.3g} at omega_p={omega_p:g}")
    return x


def reflection_oracle(params: SystemParams, port: ProbePort, omega_p: float) -> complex:
    """Reflection from the 3×3 linear solve: t = −1 + Σ sqrt(2r)·x / s."""
    probe = ProbeSpec(port=port, grid=np.array([omega_p]))
    x = steady_state(params, probe, omega_p)
    out = np.conj(drive_vector(params, port))
    return complex(-1.0 + out @ x)


def _denominators(params: SystemParams, omega_p):
    w = np.asarray(omega_p, dtype=float)
    d1 = 1j * (params.magnon1.omega - w) + params.gamma1
    d2 = 1j * (params.magnon2.omega - w) + params.gamma2
    d3 = 1j * (params.cavity.omega - w) + params.kappa
    G13 = params.g13 ** 2 * np.exp(1j * params.coupling_phase13)
    G23 = params.g23 ** 2 * np.exp(1j * params.coupling_phase23)
    return d1, d2, d3, G13, G23


def reflection_magnon1(params: SystemParams, omega_p):
    """Closed-form t1 read from antenna 1 (nested fractions kept as derived)."""
    g11 = params.magnon1.port_rate(1)
    k1 = params.cavity.port_rate(1)
    if params.gamma1 <= 0 or params.gamma2 <= 0 or params.kappa <= 0:
        raise ParameterError(["mode has zero total decay"])
    d1, d2, d3, G13, G23 = _denominators(params, omega_p)
    g13_up = params.g13 * np.exp(1j * params.coupling_phase13)
    phase = np.exp(-1j * params.phi13)
    cross = 2.0 * np.sqrt(g11 * k1)

    e = d3 + G23 / d2
    magnon_branch = d1 + G13 / e
    t = (
        -1.0
        + 2.0 * g11 / magnon_branch
        - (1j * g13_up * cross * phase / e) / magnon_branch
        + (2.0 * k1 * phase - 1j * params.g13 * cross / d1) / (d3 + G13 / d1 + G23 / d2) / phase
    )
    return t


def reflection_magnon2(params: SystemParams, omega_p):
    """Closed-form t2 read from antenna 2; mirror of t1 with 1 <-> 2."""
    g21 = params.magnon2.port_rate(2)
    k2 = params.cavity.port_rate(2)
    if params.gamma1 <= 0 or params.gamma2 <= 0 or params.kappa <= 0:
        raise ParameterError(["mode has zero total decay"])
    d1, d2, d3, G13, G23 = _denominators(params, omega_p)
    g23_up = params.g23 * np.exp(1j * params.coupling_phase23)
    phase = np.exp(-1j * params.phi23)
    cross = 2.0 * np.sqrt(g21 * k2)

    e = d3 + G13 / d1
    magnon_branch = d2 + G23 / e
    t = (
        -1.0
        + 2.0 * g21 / magnon_branch
        - (1j * g23_up * cross * phase / e) / magnon_branch
        + (2.0 * k2 * phase - 1j * params.g23 * cross / d2) / (d3 + G13 / d1 + G23 / d2) / phase
    )
    return t


def reflection_cavity(params: SystemParams, omega_p):
    """Closed-form t3 read from antenna 3."""
    k3 = params.cavity.port_rate(3)
    if params.gamma1 <= 0 or params.gamma2 <= 0 or params.kappa <= 0:
        raise ParameterError(["mode has zero total decay"])
    d1, d2, d3, G13, G23 = _denominators(params, omega_p)
    return -1.0 + 2.0 * k3 / (d3 + G13 / d1 + G23 / d2)


_REFLECTIONS = {
    "magnon1": reflection_magnon1,
    "magnon2": reflection_magnon2,
    "cavity": reflection_cavity,
}


def reflection(params: SystemParams, port: ProbePort, omega_p):
    try:
        fn = _REFLECTIONS[port]
    except KeyError:
        raise ParameterError([f"unknown probe port {port!r}"]) from None
    return fn(params, omega_p)


def reflection_effective(
    H: np.ndarray,
    port_rates: tuple[float, float],
    index: int,
    omega_p,
) -> np.ndarray:
    """Reflection of magnon port `index` (0 or 1) computed from a 2×2 effective Hamiltonian.

    The magnons obey dx/dt = −iHx + sqrt(2r)·s on the probed magnon, so
    t = −1 + 2r·[(i(H − ωp))⁻¹]_{index,index}.
    """
    w = np.atleast_1d(np.asarray(omega_p, dtype=float))
    rate = port_rates[index]
    other = 1 - index
    h11 = H[index, index] - w
    h22 = H[other, other] - w
    det = 1j * 1j * (h11 * h22 - H[0, 1] * H[1, 0])
    inverse_diag = 1j * h22 / det
    t = -1.0 + 2.0 * rate * inverse_diag
    return t if np.ndim(omega_p) else t[0]


def reflection_cavity_effective(
    H: np.ndarray,
    couplings_in: tuple[complex, complex],
    couplings_out: tuple[complex, complex],
    kappa: float,
    kappa3: float,
    omega3: float,
    omega_p,
) -> np.ndarray:
    """Reflection of antenna 3 with the magnons described by a 2×2 effective Hamiltonian.

    The cavity keeps its own response χ = 1/(κ + i(ω3 − ωp)) and drives the magnons
    through `couplings_in`; they feed back through `couplings_out`:
    t = −1 + 2κ3χ + 2iκ3χ²·g_outᵀ(H − ωp)⁻¹g_in.
    """
    w = np.atleast_1d(np.asarray(omega_p, dtype=float))
    chi = 1.0 / (kappa + 1j * (omega3 - w))
    a11 = H[0, 0] - w
    a22 = H[1, 1] - w
    det = a11 * a22 - H[0, 1] * H[1, 0]
    g_in1, g_in2 = couplings_in
    g_out1, g_out2 = couplings_out
    y1 = (a22 * g_in1 - H[0, 1] * g_in2) / det
    y2 = (a11 * g_in2 - H[1, 0] * g_in1) / det
    t = -1.0 + 2.0 * kappa3 * chi + 2j * kappa3 * chi**2 * (g_out1 * y1 + g_out2 * y2)
    return t if np.ndim(omega_p) else t[0]


def spectrum(params: SystemParams, probe: ProbeSpec) -> Spectrum:
    validate(params, probe=probe.port)
    t = np.asarray(reflection(params, probe.port, probe.grid), dtype=complex)
    return Spectrum(
        port=probe.port,
        omega=probe.grid,
        magnitude=np.abs(t),
        t=t,
        params_hash=params_digest(params),
    )
