"""Exception hierarchy for linrel."""

import numpy as np


class LinRelError(Exception):
    """Base class for all errors raised by linrel."""


class DimensionMismatch(LinRelError, ValueError):
    pass


class PreconditionError(LinRelError, ValueError):
    """An operation was called on a relation that does not satisfy its
    precondition (e.g. a non-monotone relation passed to ``to_minty``).

    ``witness`` optionally carries a graph vector ``(x, x*)`` of length
    ``2n`` certifying the violation.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = None if witness is None else np.asarray(witness, dtype=float)


class InvalidMintyForm(LinRelError, ValueError):
    pass


class RelationFileError(LinRelError, ValueError):
    """Malformed relation document. ``field`` names the offending key/row."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
