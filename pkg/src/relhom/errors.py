"""Exception hierarchy shared by all modules."""


class RelhomError(Exception):
    """Base class for every error raised by this package."""


class PresentationError(RelhomError, ValueError):
    """Malformed presentation text or word."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class PresentationSyntaxError(PresentationError):
    pass


class UnknownGeneratorError(PresentationError):
    pass


class EmptyRelatorError(PresentationError):
    pass


class CosetLimitExceeded(RelhomError):
    """Coset enumeration hit its table-size cap before closing."""


class NotInRelationSubgroup(RelhomError, ValueError):
    """A word that was expected to lie in R does not evaluate to the identity."""


class BudgetExceeded(RelhomError):
    """A computation was refused because its lattice would be too large."""


class InvariantViolation(RelhomError, AssertionError):
    """An internal consistency check failed; this signals a bug upstream.

    ``witness`` carries whatever vectors or matrices exhibit the failure.
    """

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
