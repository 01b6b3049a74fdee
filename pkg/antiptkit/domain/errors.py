from __future__ import annotations


class AntiPTError(Exception):
    """Base class for every error raised by antiptkit."""


class ParameterError(AntiPTError, ValueError):
    """One or more parameter invariants are violated."""

    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ConfigError(AntiPTError):
    """Config file missing, unreadable or not matching the schema."""

    def __init__(self, message: str, pointer: str = "") -> None:
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}" if pointer else message)


class DataError(ConfigError):
    """Measured-spectrum file cannot be ingested."""


class GridMismatchError(AntiPTError, ValueError):
    """Two spectra do not share the same grid or parameters."""


class NumericalError(AntiPTError):
    """A numerical procedure could not produce a result."""


class SingularSystemError(NumericalError):
    pass


class BracketError(NumericalError):
    pass


class EPUnattainableError(NumericalError):
    pass


class NoDipError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass
