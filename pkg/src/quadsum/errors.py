"""Exception hierarchy shared by all quadsum modules."""


class QuadsumError(Exception):
    """Base class for all errors raised by this package."""


class MixedFields(QuadsumError):
    """Two operands live in different fields."""


class DivisionByZero(QuadsumError):
    """Division or inversion of a zero field element."""


class DimensionMismatch(QuadsumError):
    """Matrix dimensions are not compatible for the requested operation."""


class Singular(QuadsumError):
    """A square matrix that was expected to be invertible is not."""


class NotMonic(QuadsumError):
    """A polynomial that must be monic is not."""


class DegreeZero(QuadsumError):
    """A polynomial of positive degree is required."""


class NotNilpotent(QuadsumError):
    """The matrix handed to the nilpotent Jordan reduction is not nilpotent."""


class MalformedSequence(QuadsumError):
    """A nullity sequence is not non-increasing or contains negatives."""


class NotSplitError(QuadsumError):
    """A quadratic t^2 - a t - b has no root in the base field."""


class UnsupportedCase(QuadsumError):
    """The instance classifies into a case this tool does not construct for.

    Carries the classification and, for the two-idempotent case, the result
    of the necessary-condition check when it applies.
    """

    def __init__(self, classification, necessary=None):
        self.classification = classification
        self.necessary = necessary
        super().__init__(f"unsupported case {classification.case}")


class DecisionNo(QuadsumError):
    """Construction was requested but the decision procedure answers no."""

    def __init__(self, decision):
        self.decision = decision
        super().__init__("matrix is not decomposable; no certificate exists")


class InternalCheckFailed(QuadsumError):
    """A mandatory post-construction verification failed (implementation bug)."""


class BudgetExceeded(QuadsumError):
    """An exhaustive enumeration would exceed the configured scan budget."""


class BadParams(QuadsumError):
    """Scalar parameters violate a precondition (e.g. equal or zero)."""


class MalformedInput(QuadsumError):
    """A JSON job description could not be parsed."""
