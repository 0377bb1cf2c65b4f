import time
from typing import Optional


class ContextMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


class NotGroebnerError(ValueError):
    """Raised when an operation needs a Groebner basis and gets something else."""


class OrderError(ValueError):
    """Raised for an invalid monomial order."""


class ParseError(ValueError):
    """Raised when an expression does not follow the polynomial grammar.

    Carries the 1-based ``line`` and ``column`` of the offending character.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotReducedError(ValueError):
    """Raised when a divisor equation has a repeated factor."""

    def __init__(self, factor: str):
        super().__init__(f"Equation is not reduced: repeated factor {factor}")
        self.factor = factor


class InconsistentBasisError(ValueError):
    """Raised when a candidate Saito basis does not close under brackets."""


class SpencerError(ValueError):
    """Raised for truncation requests that cannot be honoured."""


class ImplicationViolation(AssertionError):
    """Raised when a classification contradicts a known implication."""


class InconclusiveError(RuntimeError):
    """Raised when a computation stops without a certified answer."""


class DeadlineExceeded(InconclusiveError):
    """Raised when a deadline token runs out."""


class Deadline:
    """
    Caller-supplied cancellation token for long Groebner runs.

    Parameters:
    seconds (float): Budget from construction time. None means no limit.

    Long loops call ``check()`` once per iteration.
    """

    def __init__(self, seconds: Optional[float] = None):
        if seconds is not None and seconds <= 0:
            raise ValueError("Deadline must be a positive number of seconds.")
        self.seconds = seconds
        self._expires = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self._expires is not None and time.monotonic() > self._expires

    def check(self) -> None:
        if self.expired():
            raise DeadlineExceeded(f"Deadline of {self.seconds}s exceeded.")


def check_deadline(deadline: Optional[Deadline]) -> None:
    if deadline is not None:
        deadline.check()
