"""Exception types shared across the package."""


class MealyError(Exception):
    """Base class for all mealyforge errors."""


class UnknownSymbol(MealyError):
    """A state or letter name does not belong to the machine."""


class DuplicateTransition(MealyError):
    """Two transitions were declared for the same (state, letter) pair."""


class MissingTransition(MealyError):
    """A (state, letter) pair has no declared transition."""


class AlphabetMismatch(MealyError):
    """An operation required two machines over the same alphabet."""


class NotInvertible(MealyError):
    """The machine's state output maps are not all bijections."""


class NotReversible(MealyError):
    """The machine's per-letter transition maps are not all bijections."""


class SignedStateOnNonInvertible(MealyError):
    """A formally inverted state was used but the machine is not invertible."""


class BudgetExceeded(MealyError):
    """A state/vertex budget was exhausted before the computation finished.

    The ``partial`` attribute carries whatever partial report was available
    when the budget ran out (possibly None).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotAssociative(MealyError):
    """A multiplication table failed the associativity check."""


class NoIdentity(MealyError):
    """A multiplication table has no two-sided identity in first position."""


class NoInverse(MealyError):
    """Some element of a multiplication table has no inverse."""


class OddLength(MealyError):
    """An operation requiring even-length words received an odd one."""


class ParseError(MealyError):
    """A machine or group file failed to parse; carries a line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line
