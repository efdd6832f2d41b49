"""Exception hierarchy shared by the library, the service, and the CLI.

Failure classes map onto CLI exit codes and HTTP statuses:

* ``PreconditionViolation`` (and subclasses) -> exit 2 / HTTP 422
* ``NotFoundWithinBound`` and ``WindowExceeded`` -> exit 3 / HTTP 404
* ``InternalInvariantViolation`` and anything unexpected -> exit 1 / HTTP 500
"""


class GolombError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionViolation(GolombError):
    """An argument does not satisfy the stated precondition of an operation.

    The message names the violated condition (e.g. "a and b must be coprime").
    """


class MagnitudeError(PreconditionViolation):
    """An exact intermediate result would exceed the supported magnitude.

    All arithmetic is exact; results are capped at 2**127 - 1 so that a
    runaway input fails loudly instead of grinding through huge integers.
    """


class MemberInput(PreconditionViolation):
    """The input already belongs to the set it was supposed to avoid."""


class NotSelfMap(PreconditionViolation):
    """A polynomial leaves the positive integers on its validation window."""


class WindowViolation(PreconditionViolation):
    """A window point falsifies a certificate; the input is not progressive."""


class NotFoundWithinBound(GolombError):
    """A search bound was exhausted; existence is guaranteed but unbounded."""


class WindowExceeded(NotFoundWithinBound):
    """A constructed witness lies beyond the requested window."""


class InternalInvariantViolation(GolombError):
    """A condition that is provably true failed; indicates a bug."""
