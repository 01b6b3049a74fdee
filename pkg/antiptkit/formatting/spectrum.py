from __future__ import annotations

import numpy as np

from ..domain.fit import MeasuredSpectrum
from ..domain.scattering import Spectrum
from .numbers import fmt

SPECTRUM_HEADER = "omega_p_MHz,re_t,im_t,mag,mag_dB"
MEASURED_HEADER = "freq_MHz,mag"


def render_spectrum_csv(spec: Spectrum) -> str:
    """One row per grid point; re_t/im_t are empty for derived spectra."""
    lines = [SPECTRUM_HEADER]
    db = spec.magnitude_db
    for i, omega in enumerate(spec.omega):
        if spec.t is None:
            re_t = im_t = ""
        else:
            re_t, im_t = fmt(spec.t[i].real), fmt(spec.t[i].imag)
        mag_db = fmt(db[i]) if np.isfinite(db[i]) else "-inf"
        lines.append(f"{fmt(omega)},{re_t},{im_t},{fmt(spec.magnitude[i])},{mag_db}")
    return "\n".join(lines) + "\n"


def render_measured_csv(measured: MeasuredSpectrum) -> str:
    lines = [MEASURED_HEADER]
    for omega, mag in zip(measured.omega, measured.magnitude):
        lines.append(f"{fmt(omega)},{fmt(mag)}")
    return "\n".join(lines) + "\n"
