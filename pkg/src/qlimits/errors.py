"""Exception hierarchy shared by all qlimits modules.

Every error carries a machine-readable ``kind`` and, where useful, the
offending input, so the CLI can emit structured error objects.
"""

from __future__ import annotations


class QlimitsError(Exception):
    """Base class for all qlimits errors."""

    kind = "error"

    def __init__(self, message: str, offending_input=None):
        super().__init__(message)
        self.offending_input = offending_input


class ParseError(QlimitsError, ValueError):
    """Malformed textual input (durations, schedule files, ...)."""

    kind = "parse"


class UsageError(QlimitsError):
    """A required flag or flag combination is missing (CLI exit code 2)."""

    kind = "usage"


class DomainError(QlimitsError, ValueError):
    """An argument violates a documented precondition."""

    kind = "domain"


class InfeasibleError(QlimitsError):
    """A bound inversion has no solution for the given budget.

    ``floor`` holds the hard lower limit that the budget failed to clear.
    """

    kind = "infeasible"

    def __init__(self, message: str, floor: float, offending_input=None):
        super().__init__(message, offending_input)
        self.floor = floor


class CapacityError(QlimitsError):
    """A request exceeds a hard resource guard (memory, bracket, ...)."""

    kind = "capacity"


class ConsistencyError(QlimitsError):
    """An internal numerical invariant was violated (defective propagator)."""

    kind = "internal-consistency"


class ScenarioLookupError(QlimitsError, KeyError):
    """Unknown scenario name."""

    kind = "lookup"
