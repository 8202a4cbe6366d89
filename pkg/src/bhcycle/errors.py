"""Exception taxonomy shared across the package."""


class BHCycleError(Exception):
    """Base class for all package errors."""


class PreconditionError(BHCycleError, ValueError):
    """An operation was called outside its contract (CLI exit code 2)."""


class SearchNotFound(BHCycleError):
    """Exhaustive search proved the requested structure absent (conclusive)."""


class SearchBudgetExceeded(BHCycleError):
    """Search gave up on its node/time budget; result is inconclusive (exit code 4)."""


class InternalInvariantError(BHCycleError):
    """A guaranteed selection or count failed; indicates a bug, never user error."""


class StitchError(BHCycleError):
    """Path segments and cross edges do not splice into a single Hamiltonian cycle."""


class OracleFailure(BHCycleError):
    """A sub-search whose success is guaranteed by the construction failed.

    Carries the case trace gathered so far for debugging; never silently retried.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class VerificationError(BHCycleError):
    """A produced object failed independent verification (exit code 3)."""
