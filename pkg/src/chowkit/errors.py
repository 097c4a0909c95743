"""Exception types shared across the package."""


class ChowError(Exception):
    """Base class for every error raised by chowkit."""


class DimensionMismatch(ChowError, ValueError):
    pass


class NonIntegralError(ChowError, ArithmeticError):
    """A rational class failed to convert back to integral Chern classes."""


class DegreeMismatch(ChowError, ValueError):
    """A class passed to ``integral`` is not homogeneous of top degree."""


class AmbiguousChase(ChowError):
    """The long exact sequences leave ``H^q`` of some cokernel undetermined."""

    def __init__(self, q: int, message: str = ""):
        self.q = q
        super().__init__(message or f"AMBIGUOUS: H^{q} is not forced by vanishing")


class OddDimensionError(ChowError, ValueError):
    """ODD_N: the operation is only defined for even ambient dimension."""


class NotAlternatingError(ChowError, ValueError):
    pass


class OddSizeError(ChowError, ValueError):
    pass


class IncidenceViolated(ChowError, ValueError):
    pass


class ParseError(ChowError, ValueError):
    """Raised by the bundle-expression parser.

    ``offset`` is the byte offset of the offending token and ``expected`` the
    set of tokens that would have been accepted there.
    """

    def __init__(self, offset: int, expected, found: str = ""):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        what = repr(found) if found else "end of input"
        super().__init__(f"PARSE_ERROR at offset {offset}: found {what}, expected one of: {exp}")
