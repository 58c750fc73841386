from __future__ import annotations
from typing import Any, Iterable


class WarpwaveError(Exception):
    """Base class of all the errors raised by warpwave."""

    exit_code: int = 1


class ValidationError(WarpwaveError, ValueError):
    """Invalid configuration or argument. All the problems are reported at once."""

    exit_code = 2

    def __init__(self, problems: str | Iterable[str], name: str | None = None):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        self.name = name
        if name is None:
            header = ""
        else:
            header = f"Invalid {name}: "
        super().__init__(header + "; ".join(self.problems))


class DomainError(ValidationError):
    """Position or index outside the domain of a map."""


class OversamplingTooLowError(ValidationError):
    """Snapped anchors collapsed onto the same sample."""


class SplitPreconditionError(ValidationError):
    """The split transmitter cannot handle the configuration."""

    def __init__(self, pulse: int, reason: str):
        self.pulse = pulse
        super().__init__(f"pulse {pulse}: {reason}", name="split configuration")


class ConvergenceError(WarpwaveError, RuntimeError):
    """An iterative solver did not converge. ``last`` is the last iterate."""

    exit_code = 3

    def __init__(self, msg: str, last: Any = None):
        super().__init__(msg)
        self.last = last


class InfeasibleDesignError(ConvergenceError):
    """No point satisfied the leakage bound within the evaluation budget."""

    def __init__(self, msg: str, best: Any = None, leakage: float = float("nan")):
        super().__init__(msg, last=best)
        self.leakage = leakage


class NumericalError(WarpwaveError, ArithmeticError):
    exit_code = 4


class MonotonicityError(NumericalError):
    """A spline warping map is not strictly increasing."""


class ZeroForcingError(NumericalError):
    """Channel response too small to be inverted."""

    def __init__(self, bin: int, magnitude: float):
        self.bin = bin
        self.magnitude = magnitude
        super().__init__(
            f"Channel response |H|={magnitude:.3g} at bin {bin} is below the "
            "zero-forcing threshold."
        )


class ErrorCollector:
    """
    Collect validation problems and raise them together.

    >>> errors = ErrorCollector("config")
    >>> errors.check(x > 0, "x must be positive")
    >>> errors.raise_if_any()
    """

    def __init__(self, name: str):
        self._name = name
        self._problems: list[str] = []

    def check(self, condition: bool, msg: str) -> bool:
        if not condition:
            self._problems.append(msg)
        return bool(condition)

    def add(self, msg: str) -> None:
        self._problems.append(msg)

    def __bool__(self) -> bool:
        return bool(self._problems)

    def raise_if_any(self) -> None:
        if self._problems:
            raise ValidationError(self._problems, name=self._name)
