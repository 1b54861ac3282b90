"""Exception hierarchy shared by all bimon modules."""


class BimonError(Exception):
    """Base class for all errors raised by this package."""


class NonInvertible(BimonError):
    """The element lies on (or numerically too close to) the singular line
    of the algebra, where no multiplicative inverse exists."""


class PoleInDomain(BimonError):
    """A rational evaluator hit a zero of its denominator."""


class ParseError(BimonError):
    """Boundary-expression text could not be parsed.

    Carries the byte offset of the failure and the set of tokens that
    would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = frozenset(expected)


class UnknownIdentifier(ParseError):
    """An identifier in a boundary expression is not a known function,
    constant, or the domain variable."""


class WrongVariable(ParseError):
    """The expression uses the variable of the other domain
    (e.g. ``t`` in a circle expression)."""


class EvaluationError(BimonError):
    """Boundary-expression evaluation produced a non-finite value."""


class NoFiniteLimit(BimonError):
    """Real-line boundary data has no finite limit at infinity."""


class NonFiniteSample(BimonError):
    """An integrand returned NaN or Inf at a quadrature node."""


class TraceUnavailable(BimonError):
    """The boundary trace of F' did not stabilize; the pipeline route
    cannot proceed for this data."""


class EvaluationOutsideDomain(BimonError):
    """An analytic evaluator was called outside its domain (or closer to
    the boundary than the allowed clearance)."""
