"""Exception hierarchy shared by every layer of the engine."""


class AlgebraError(Exception):
    """Base class for all errors raised by skewpbw."""


class ContextError(AlgebraError):
    """Operands live over different parameter contexts or generator counts."""


class DivisionByZeroError(AlgebraError, ZeroDivisionError):
    pass


class NotAUnitError(AlgebraError):
    """A scalar that is not a declared unit was asked for its inverse."""


class EmptyPolynomialError(AlgebraError):
    pass


class PreconditionError(AlgebraError):
    pass


class SkewSystemError(AlgebraError):
    """A rule set does not have the shape of a deglex skew reduction system.

    ``pair`` names the offending descending pair ``(j, i)`` when there is one.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ShapeError(AlgebraError):
    """The system is valid but not of the three-generator, linear-tail shape."""


class SearchBudgetError(AlgebraError):
    pass


class VerdictRequiredError(AlgebraError):
    """An operation that only makes sense for PBW systems got a non-PBW one."""


class ClassificationError(AlgebraError):
    """Raised when the case guards cannot be decided or none of them applies.

    ``predicates`` lists the equalities between parameters that would have to
    be known to pick a branch.
    """

    def __init__(self, message, predicates=()):
        super().__init__(message)
        self.predicates = tuple(predicates)


class ParseError(AlgebraError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
