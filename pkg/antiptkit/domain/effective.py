"""Adiabatic elimination of the cavity and the anti-PT effective Hamiltonian."""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .constants import DOMINANCE_RATIO, EP_RTOL
from .errors import EPUnattainableError, ParameterError
from .models import SystemParams

logger = logging.getLogger(__name__)

HamiltonianForm = Literal["general", "antiPT"]
Frame = Literal["lab", "rotating"]
Regime = Literal["symmetric", "broken", "exceptional"]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class EffectiveHamiltonian:
    H: np.ndarray
    form: HamiltonianForm
    frame: Frame


@dataclass(frozen=True)
class PhaseRegime:
    regime: Regime
    discriminant: float


@dataclass(frozen=True)
class AntiPTParameters:
    """Symmetrized (Ω, Γ, γ) of the anti-PT form, plus the mean coupling g."""

    Omega: float
    Gamma: float
    gamma: float
    g: float


def _require_kappa(kappa: float) -> None:
    if kappa <= 0:
        raise ParameterError([f"cavity: kappa must be positive, got {kappa:g}"])


def effective_coupling(g: float, kappa: float) -> float:
    """Dissipative coupling Γ = g²/κ."""
    _require_kappa(kappa)
    return g * g / kappa


def eliminate_cavity(params: SystemParams) -> EffectiveHamiltonian:
    """General 2×2 Hamiltonian of the two magnons after eliminating the cavity (lab frame).

    Each magnon sees the cavity through 1/(κ − iΔk3) with Δk3 = ω3 − ωk.
    """
    kappa = params.kappa
    _require_kappa(kappa)
    w1, w2, w3 = params.magnon1.omega, params.magnon2.omega, params.cavity.omega
    d13 = w3 - w1
    d23 = w3 - w2
    g13_up = params.g13 * np.exp(1j * params.coupling_phase13)
    g23_up = params.g23 * np.exp(1j * params.coupling_phase23)
    r13 = 1.0 / (kappa - 1j * d13)
    r23 = 1.0 / (kappa - 1j * d23)
    H = np.array(
        [
            [w1 - 1j * (params.gamma1 + params.g13 * g13_up * r13), -1j * g13_up * params.g23 * r23],
            [-1j * g23_up * params.g13 * r13, w2 - 1j * (params.gamma2 + params.g23 * g23_up * r23)],
        ],
        dtype=complex,
    )
    H.setflags(write=False)
    return EffectiveHamiltonian(H=H, form="general", frame="lab")


def antipt_parameters(params: SystemParams) -> AntiPTParameters:
    """Mean-value symmetrization used by the anti-PT description."""
    _require_kappa(params.kappa)
    g = 0.5 * (params.g13 + params.g23)
    return AntiPTParameters(
        Omega=0.5 * (params.magnon1.omega - params.magnon2.omega),
        Gamma=g * g / params.kappa,
        gamma=0.5 * (params.gamma1 + params.gamma2),
        g=g,
    )


def antipt_matrix(Omega: float, Gamma: float, gamma: float) -> np.ndarray:
    loss = -1j * (gamma + Gamma)
    return np.array(
        [[Omega + loss, -1j * Gamma], [-1j * Gamma, -Omega + loss]],
        dtype=complex,
    )


def reduce_to_antipt(params: SystemParams) -> EffectiveHamiltonian:
    """Anti-PT form in the frame rotating at (ω1+ω2)/2."""
    sym = antipt_parameters(params)
    kappa = params.kappa
    d13 = abs(params.cavity.omega - params.magnon1.omega)
    d23 = abs(params.cavity.omega - params.magnon2.omega)
    if kappa < DOMINANCE_RATIO * max(d13, d23):
        logger.warning(
            "Warning: kappa=%.4g is not much larger than the cavity detunings (%.4g, %.4g).",
            kappa,
            d13,
            d23,
        )
    H = antipt_matrix(sym.Omega, sym.Gamma, sym.gamma)
    H.setflags(write=False)
    return EffectiveHamiltonian(H=H, form="antiPT", frame="rotating")


def eigvals_antipt(Omega: float, Gamma: float, gamma: float) -> tuple[complex, complex]:
    """λ± = −i(γ+Γ) ± √(Ω²−Γ²)."""
    root = cmath.sqrt(complex(Omega * Omega - Gamma * Gamma))
    center = complex(0.0, -(gamma + Gamma))
    return center + root, center - root


def order_pair(a: complex, b: complex, rtol: float = 1e-12) -> tuple[complex, complex]:
    """λ+ first: larger real part, ties broken by larger imaginary part."""
    scale = max(abs(a), abs(b), 1.0)
    if abs(a.real - b.real) <= rtol * scale:
        return (a, b) if a.imag >= b.imag else (b, a)
    return (a, b) if a.real > b.real else (b, a)


def eigvals_general(H: EffectiveHamiltonian | np.ndarray) -> tuple[complex, complex]:
    matrix = H.H if isinstance(H, EffectiveHamiltonian) else np.asarray(H)
    if matrix.shape != (2, 2):
        raise ParameterError([f"effective Hamiltonian must be 2x2, got {matrix.shape}"])
    values = np.linalg.eigvals(matrix)
    return order_pair(complex(values[0]), complex(values[1]))


def discriminant(pair: tuple[complex, complex]) -> complex:
    """((λ+ − λ−)/2)², which equals Ω²−Γ² for the anti-PT form."""
    half = 0.5 * (pair[0] - pair[1])
    return half * half


def classify_phase(Omega: float, Gamma: float, tol: float = EP_RTOL) -> PhaseRegime:
    if tol < 0:
        raise ParameterError([f"tolerance must be non-negative, got {tol:g}"])
    disc = Omega * Omega - Gamma * Gamma
    margin = tol * max(abs(Omega), abs(Gamma))
    if abs(Gamma) - abs(Omega) > margin:
        return PhaseRegime("symmetric", disc)
    if abs(Omega) - abs(Gamma) > margin:
        return PhaseRegime("broken", disc)
    return PhaseRegime("exceptional", disc)


def ep_kappa(g: float, Omega: float) -> float:
    """Cavity rate κ0 = g²/|Ω| where Γ(κ0) = |Ω|."""
    if Omega == 0:
        raise EPUnattainableError("Omega = 0: the exceptional point sits at infinite kappa")
    return g * g / abs(Omega)


def antipt_residual(H: EffectiveHamiltonian | np.ndarray) -> float:
    """Max-norm of σx H* σx + H after removing the trace."""
    matrix = np.asarray(H.H if isinstance(H, EffectiveHamiltonian) else H, dtype=complex)
    shifted = matrix - 0.5 * np.trace(matrix) * np.eye(2)
    defect = SIGMA_X @ shifted.conj() @ SIGMA_X + shifted
    return float(np.max(np.abs(defect)))
