"""Exception hierarchy.

Two families matter to callers: :class:`PreconditionError` covers inputs the
user can fix (bad primes, too few supersingular invariants), while
:class:`TripwireError` is raised when something that should be impossible
for valid input happens (an internal bug or corrupted data).
"""


class ModpolyError(Exception):
    """Base class for all library errors."""


class PreconditionError(ModpolyError, ValueError):
    """Input violates a documented precondition."""


class TripwireError(ModpolyError, RuntimeError):
    """A correctness guarantee failed; indicates a bug or corrupted input."""


class FieldMismatchError(ModpolyError, TypeError):
    """Operands live in different fields."""


class NotSupersingularError(ModpolyError):
    """Trace determination found no consistent supersingular trace."""


class PointNotOnCurveError(ModpolyError, ValueError):
    pass


class TorsionError(ModpolyError):
    """Torsion basis extraction failed (valuation too small or retries exhausted)."""


class KernelOrderError(ModpolyError, ValueError):
    pass


class PrecisionError(ModpolyError):
    """Complex evaluation could not be rounded to integers reliably."""


class DescentError(TripwireError):
    """An interpolated coefficient does not lie in the prime field."""


class FrontierExhaustedError(TripwireError):
    """The isogeny-graph walk ran out of unvisited vertices."""


class NotStabilizedError(ModpolyError):
    """CRT reconstruction did not stabilise before the modulus cap."""


class SearchFailedError(TripwireError):
    """A randomized search exceeded its trial cap."""
