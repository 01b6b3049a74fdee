from __future__ import annotations

import csv
import os
import tempfile
from pathlib import Path

import numpy as np

from ..domain.errors import DataError
from ..domain.fit import MeasuredSpectrum, Scale
from ..domain.models import ProbePort

MEASURED_HEADER = ("freq_MHz", "mag")


def read_measured(path: Path, port: ProbePort, scale: Scale = "linear") -> MeasuredSpectrum:
    """Read a `freq_MHz,mag` file; errors name the offending row (1 = header)."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read data file '{path}': {exc}") from exc

    reader = csv.reader(text.splitlines())
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != MEASURED_HEADER:
        raise DataError(f"expected header '{','.join(MEASURED_HEADER)}'", f"{path}:row 1")

    freqs: list[float] = []
    mags: list[float] = []
    for row_number, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise DataError(f"expected 2 columns, got {len(row)}", f"{path}:row {row_number}")
        try:
            freq = float(row[0])
            mag = float(row[1])
        except ValueError:
            raise DataError(f"non-numeric value in {row!r}", f"{path}:row {row_number}") from None
        if freqs and freq <= freqs[-1]:
            raise DataError(
                f"frequency {freq:g} not strictly increasing after {freqs[-1]:g}",
                f"{path}:row {row_number}",
            )
        if scale == "linear" and mag < 0:
            raise DataError(f"negative linear magnitude {mag:g}", f"{path}:row {row_number}")
        freqs.append(freq)
        mags.append(mag)

    if not freqs:
        raise DataError("no data rows", str(path))
    return MeasuredSpectrum(port=port, omega=np.asarray(freqs), magnitude=np.asarray(mags), scale=scale)


def write_text_atomic(path: Path, text: str) -> None:
    """Write via a temp file in the target directory and rename over the target."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
