"""Error types and the global evaluation budget."""

import os

DEFAULT_BUDGET = 10**8


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class AlignmentError(DomainError):
    """Two objects that must share a partition do not."""


class CapacityError(RuntimeError):
    """The computation would exceed the configured evaluation budget.

    ``partial`` may carry whatever results were obtained before capping.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def evaluation_budget() -> int:
    """Budget on weighted assignment evaluations, overridable via GRAPHON_BUDGET."""
    raw = os.environ.get("GRAPHON_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise DomainError(f"GRAPHON_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise DomainError("GRAPHON_BUDGET must be positive")
    return value
