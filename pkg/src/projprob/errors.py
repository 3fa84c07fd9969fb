"""Exception types raised by projprob."""


class ProjprobError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(ProjprobError, ValueError):
    """Operands live in Hilbert spaces of different dimension."""


class PreconditionError(ProjprobError, ValueError):
    """A numerical precondition failed.

    Examples are a non-Hermitian matrix where a Hermitian one is required,
    a propagator that is not a contraction, or a collapse onto an event
    that annihilates the state.
    """
