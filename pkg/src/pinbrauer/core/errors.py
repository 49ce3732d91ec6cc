"""Exception hierarchy shared by every pinbrauer module."""
from typing import Any, Dict, Optional


class PinBrauerError(Exception):
    """Base class for all library errors."""


class InvalidOperandError(PinBrauerError, ZeroDivisionError):
    """Division by zero in Q(sqrt2) or in a PolyX operation."""


class InvalidInputError(PinBrauerError, ValueError):
    """Malformed labels, wrong parity of N, illegal signs or positions."""


class DegreeMismatchError(InvalidInputError):
    """An exterior element does not have the declared degree."""


class OutOfRangeError(InvalidInputError):
    """An operation was asked for outside the range where it is defined."""


class UnsupportedError(PinBrauerError, NotImplementedError):
    """No closed form is available for the requested combination."""


class VerificationError(PinBrauerError):
    """An exact identity failed during a verification suite.

    Args:
        suite: Name of the suite that failed.
        case: Short description of the failing case.
        detail: Optional machine-readable details.
    """

    def __init__(self, suite: str, case: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(f"{suite}: {case}")
        self.suite = suite
        self.case = case
        self.detail = detail or {}

    def to_record(self) -> Dict[str, Any]:
        return {"suite": self.suite, "case": self.case, "detail": self.detail}
