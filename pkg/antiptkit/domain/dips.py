from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks, peak_widths

from .constants import BASELINE_FRACTION, DIP_MIN_PROMINENCE, DIP_THRESHOLD
from .errors import GridMismatchError, NoDipError
from .scattering import Spectrum


@dataclass(frozen=True)
class Dip:
    frequency: float
    magnitude: float
    depth: float


@dataclass(frozen=True)
class DipReport:
    dips: tuple[Dip, ...]
    fwhm: tuple[float, ...]
    separation: float
    baseline: float

    @property
    def mean_fwhm(self) -> float:
        deepest = self._deepest()
        return float(np.mean([self.fwhm[i] for i in deepest]))

    @property
    def resolvable(self) -> bool:
        return len(self.dips) >= 2 and self.separation > self.mean_fwhm

    def _deepest(self) -> list[int]:
        order = sorted(range(len(self.dips)), key=lambda i: -self.dips[i].depth)
        return sorted(order[:2])


def combined_spectrum(s11: Spectrum, s22: Spectrum) -> Spectrum:
    """Pointwise mean of the two magnitudes, (|t1| + |t2|)/2."""
    if s11.omega.shape != s22.omega.shape or not np.array_equal(s11.omega, s22.omega):
        raise GridMismatchError("combined spectrum needs identical grids")
    if s11.params_hash != s22.params_hash:
        raise GridMismatchError("combined spectrum needs spectra of the same parameters")
    return Spectrum(
        port="combined",
        omega=s11.omega,
        magnitude=0.5 * (s11.magnitude + s22.magnitude),
        t=None,
        params_hash=s11.params_hash,
    )


def spectrum_baseline(magnitude: np.ndarray, fraction: float = BASELINE_FRACTION) -> float:
    """Median magnitude over the outer `fraction` of the grid (half on each side)."""
    edge = max(1, int(round(0.5 * fraction * magnitude.size)))
    outer = np.concatenate([magnitude[:edge], magnitude[-edge:]])
    return float(np.median(outer))


def _saddles(inverted: np.ndarray, peaks: np.ndarray) -> np.ndarray:
    """Highest magnitude (lowest inverted value) between each pair of neighbouring dips."""
    return np.array(
        [left + int(np.argmin(inverted[left : right + 1])) for left, right in zip(peaks, peaks[1:])],
        dtype=np.intp,
    )


def dip_analysis(
    spec: Spectrum,
    threshold: float = DIP_THRESHOLD,
    window: tuple[float, float] | None = None,
) -> DipReport:
    """Find dips below the baseline and measure their full width at half depth.

    Only dips inside `window` (inclusive frequency bounds) are reported; the baseline
    always comes from the whole spectrum. A dip's half-depth crossing is searched
    only up to the saddle towards its neighbour; when the half level is not reached
    there, the width is twice the half width of the outer flank.
    """
    magnitude = np.asarray(spec.magnitude, dtype=float)
    omega = np.asarray(spec.omega, dtype=float)
    if magnitude.size < 3:
        raise NoDipError("spectrum too short for dip analysis")

    baseline = spectrum_baseline(magnitude)
    inverted = baseline - magnitude
    peaks, _ = find_peaks(
        inverted,
        height=threshold * baseline,
        prominence=DIP_MIN_PROMINENCE * baseline,
    )
    if window is not None:
        lo, hi = window
        peaks = peaks[(omega[peaks] >= lo) & (omega[peaks] <= hi)]
    if peaks.size == 0:
        raise NoDipError(f"no dip deeper than {threshold:.0%} of the baseline {baseline:.4g}")

    # Half depth is measured from the baseline, not from the neighbouring maxima.
    depths = inverted[peaks]
    saddles = _saddles(inverted, peaks)
    left_bases = np.concatenate([[0], saddles]).astype(np.intp)
    right_bases = np.concatenate([saddles, [magnitude.size - 1]]).astype(np.intp)
    _, half_levels, left_ips, right_ips = peak_widths(
        inverted, peaks, rel_height=0.5, prominence_data=(depths, left_bases, right_bases)
    )
    index = np.arange(omega.size, dtype=float)
    left_half = omega[peaks] - np.interp(left_ips, index, omega)
    right_half = np.interp(right_ips, index, omega) - omega[peaks]
    left_open = inverted[left_bases] >= half_levels
    right_open = inverted[right_bases] >= half_levels

    fwhm: list[float] = []
    for lh, rh, lo_open, ro_open in zip(left_half, right_half, left_open, right_open):
        if lo_open and not ro_open:
            fwhm.append(float(2.0 * rh))
        elif ro_open and not lo_open:
            fwhm.append(float(2.0 * lh))
        else:
            fwhm.append(float(lh + rh))

    dips = tuple(
        Dip(frequency=float(omega[p]), magnitude=float(magnitude[p]), depth=float(d))
        for p, d in zip(peaks, depths)
    )
    if len(dips) < 2:
        separation = 0.0
    else:
        order = sorted(range(len(dips)), key=lambda i: -dips[i].depth)[:2]
        separation = abs(dips[order[0]].frequency - dips[order[1]].frequency)
    return DipReport(dips=dips, fwhm=tuple(fwhm), separation=separation, baseline=baseline)
