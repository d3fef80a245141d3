"""Exception taxonomy shared across the package.

Every error raised on a caller mistake or an infeasible input derives from
:class:`ProxyRDError`, so callers can catch one base type. Subclasses carry
the offending field or event as data rather than burying it in the message.
"""

from __future__ import annotations


class ProxyRDError(Exception):
    """Base class for all package-specific errors."""


class OutOfRangeError(ProxyRDError, ValueError):
    """A numeric field left its admissible interval."""

    def __init__(self, field: str, value: float, lo: float, hi: float) -> None:
        self.field = field
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(f"{field}={value!r} outside [{lo}, {hi}]")


class DegenerateConditioningError(ProxyRDError, ZeroDivisionError):
    """A requested conditional is undefined because the event has probability zero."""

    def __init__(self, event: str) -> None:
        self.event = event
        super().__init__(f"conditioning event {event} has probability 0")


class ConstraintsNotMetError(ProxyRDError, ValueError):
    """An operation requiring a named constraint set was given a model outside it."""

    def __init__(self, constraint_set: str, failed: tuple[str, ...]) -> None:
        self.constraint_set = constraint_set
        self.failed = failed
        super().__init__(
            f"model violates constraint set {constraint_set!r}: {', '.join(failed)}"
        )


class UnsatisfiableConstraintsError(ProxyRDError, ValueError):
    """A constraint set admits no model, or sampling from it exhausted its retry budget."""

    def __init__(self, constraint_set: str, detail: str) -> None:
        self.constraint_set = constraint_set
        super().__init__(f"constraint set {constraint_set!r}: {detail}")


class SingularDenominatorError(ProxyRDError, ZeroDivisionError):
    """A closed-form coefficient is undefined at these path weights."""

    def __init__(self, detail: str) -> None:
        super().__init__(detail)


class InvalidVarianceError(ProxyRDError, ValueError):
    """Standardization is impossible: an implied error variance is negative."""

    def __init__(self, variable: str, variance: float) -> None:
        self.variable = variable
        self.variance = variance
        super().__init__(f"implied error variance of {variable} is {variance:.6g} < 0")


class ParseError(ProxyRDError, ValueError):
    """An input record could not be parsed; ``line`` is 1-based."""

    def __init__(self, line: int, detail: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {detail}")


class EmptyInputError(ProxyRDError, ValueError):
    """A record stream held no data rows."""

    def __init__(self) -> None:
        super().__init__("no data rows in input")


class DegenerateCellError(ProxyRDError, ValueError):
    """An estimation cell (a_val, d_val) holds no records."""

    def __init__(self, a_val: int, d_val: int) -> None:
        self.a_val = a_val
        self.d_val = d_val
        super().__init__(f"no records with a={a_val}, d={d_val}")
