"""Exception types shared by all holonorm modules."""


class HolonormError(Exception):
    """Base class for package errors."""


class NoSuchRoot(HolonormError):
    """A root selector matched no root of the polynomial."""


class PoleEvaluation(HolonormError):
    """A rational coefficient was evaluated at a pole."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"coefficient has a pole at n = {index}")


class RecurrenceNotFound(HolonormError):
    """No recurrence within the search bounds survived verification."""


class Unsupported(HolonormError):
    """The recurrence falls outside the supported asymptotic scale.

    ``kind`` is one of the module-level ``UNSUPPORTED_*`` constants.
    """

    def __init__(self, kind, message=None):
        self.kind = kind
        super().__init__(message or f"unsupported asymptotic scale: {kind}")


UNSUPPORTED_SUPEREXPONENTIAL = "superexponential"
UNSUPPORTED_SUBEXPONENTIAL = "subexponential"
UNSUPPORTED_COMPLEX_PAIR = "complex dominant pair"
UNSUPPORTED_MULTIPLE_DOMINANT = "multiple dominant roots"
UNSUPPORTED_REPEATED_ROOT = "repeated root"
UNSUPPORTED_NEGATIVE_DOMINANT = "negative dominant root"
UNSUPPORTED_DEGENERATE = "degenerate operator"


class NonRationalExponent(HolonormError):
    """The growth exponent failed rational reconstruction."""


class UnstableExtrapolation(HolonormError):
    """Richardson depths disagreed beyond the configured tolerance."""


class DivisionByVanishingSeries(HolonormError):
    """Truncated-series division by a series with vanishing leading term."""


class AllZeroRow(HolonormError):
    """A coefficient row contained no nonzero entry."""


class ZeroVariance(HolonormError):
    """The coefficient distribution has zero variance."""


class DefinitionSyntaxError(HolonormError):
    """Syntax error in the sequence-definition language."""

    def __init__(self, message, line, column, expected=None):
        self.line = line
        self.column = column
        self.expected = expected
        tail = f" (expected {expected})" if expected else ""
        super().__init__(f"line {line}, column {column}: {message}{tail}")


class UnknownIdentifier(HolonormError):
    """An identifier other than the allowed names appeared in a definition."""


class UnknownSequence(HolonormError):
    """Catalog lookup failed."""

    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(
            f"unknown sequence {name!r}; available: {', '.join(self.available)}"
        )


class NonIntegerArgument(HolonormError):
    """binomial/factorial received a non-integer argument."""


class EvaluationError(HolonormError):
    """Arithmetic failure while evaluating a definition at (n, k)."""

    def __init__(self, message, n=None, k=None):
        self.n = n
        self.k = k
        where = f" at (n={n}, k={k})" if n is not None else ""
        super().__init__(message + where)
