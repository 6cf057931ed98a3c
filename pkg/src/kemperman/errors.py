"""Exception hierarchy shared by all modules."""


class KempermanError(Exception):
    """Base class for every error raised by this package."""


class AmbientError(KempermanError, ValueError):
    """Malformed ambient descriptor or unsupported field parameters."""


class MixedAmbientError(KempermanError, ValueError):
    """Operands live in different ambients."""


class DegreeOverflowError(KempermanError, ArithmeticError):
    """A rational-function result would exceed the ambient degree cap."""


class EnumerationCapError(KempermanError, RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""


class ConditionError(KempermanError, ValueError):
    """Input data violates a theorem hypothesis checked at construction."""


class InvariantError(KempermanError, AssertionError):
    """A guaranteed invariant failed; either a bug or a counterexample."""


class GroupError(KempermanError, ValueError):
    """Malformed group descriptor or invalid Cayley table."""
