"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: invalid input data is code 2,
violated mathematical preconditions are code 3, and a failed identity
verification (which is a report, not an exception) is code 1.
"""


class QBrionError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(QBrionError):
    """Malformed or inconsistent input data (bad JSON, bad facet data, ...)."""


class EmptyPolytopeError(InvalidInputError):
    """The half-space intersection contains no point."""


class PreconditionError(QBrionError):
    """An operation was called on data that violates its preconditions."""


class SmoothnessError(PreconditionError):
    """Vertex enumeration hit a non-unimodular or non-integral vertex cone."""


class PoleError(PreconditionError):
    """A series evaluation point sits on a pole of the expression."""


class ConvergenceError(QBrionError):
    """An iterative solver exhausted its iteration budget."""
