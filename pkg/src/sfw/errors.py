"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ParseError -> 2, PreconditionError and
its subclasses -> 3, CapExceededError -> 4.  Verification failures are data
(reports), not exceptions, and exit 1.  InvariantViolationError signals a
broken internal consistency check and is never expected to fire.
"""


class SfwError(Exception):
    pass


class ParseError(SfwError):
    """Malformed input data (JSON syntax, bad generator images, ...)."""


class PreconditionError(SfwError):
    """Input is well formed but violates a documented precondition."""


class SubgroupError(PreconditionError):
    pass


class NotNormalError(PreconditionError):
    pass


class NontrivialCenterError(PreconditionError):
    pass


class InvalidActionError(PreconditionError):
    pass


class HomomorphismError(PreconditionError):
    pass


class ConstraintError(PreconditionError):
    """An arithmetic side condition failed; the message reports both sides."""


class CapExceededError(SfwError):
    """A configured resource cap (group order, k, oracle size) was exceeded."""


class NumericalDegeneracyError(SfwError):
    """Numerical linear algebra failed beyond tolerance; carries residuals."""


class InvariantViolationError(SfwError):
    """Internal cross-check failed.  Indicates a bug, not bad input."""
