from __future__ import annotations

from ..domain.constants import CSV_DIGITS


def fmt(value: float) -> str:
    """Fixed significant-digit rendering shared by every CSV writer."""
    return f"{float(value):.{CSV_DIGITS}g}"
