"""Exception hierarchy shared by all approxap modules."""


class ApproxAPError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(ApproxAPError, ValueError):
    """An argument violates a documented precondition."""


class EmptySetError(ApproxAPError, ValueError):
    """An operation that needs a nonempty set received an empty one."""


class ParseError(ApproxAPError, ValueError):
    """Input file could not be parsed; message names the offending line."""


class CapabilityError(ApproxAPError):
    """The request is beyond the documented exact-computation range.

    Raised instead of ever returning an unverified answer.
    """


class ExactProgressionError(ApproxAPError):
    """A doubled deviation of zero: an exact 3-term progression of t-th powers.

    Mathematically impossible for t >= 3, but the code refuses to assume it.
    """


class InternalCheckError(ApproxAPError):
    """A self-verification step failed; indicates a bug, never swallowed."""
