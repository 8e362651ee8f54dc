"""Exception hierarchy.

Everything the library raises on bad mathematical input derives from
:class:`DomainError`; the CLI maps it to exit code 2.
"""


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class ContextMismatch(DomainError):
    """Operands were built with different dimension, order or ring."""


class DegreeError(DomainError):
    """Inconsistent or overflowing tensor / polynomial degrees."""


class PreconditionError(DomainError):
    """A structural precondition (unit constant term, identity linear term,
    unipotence, vanishing constant term, ...) does not hold."""


class MembershipError(DomainError):
    """An operator was asserted to lie in a subgroup it does not belong to."""


class ConsistencyError(RuntimeError):
    """The matrix and pair views of a Sheffer operator disagree.

    This signals an implementation bug rather than bad input.
    """


class CurveError(DomainError):
    """A time curve has coefficients that are not polynomials in t."""
