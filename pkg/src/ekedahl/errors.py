"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`EkedahlError`.
The CLI maps the three families below to exit codes 3 (validation),
4 (computation cap) and 3 again for plain computation errors.
"""


class EkedahlError(Exception):
    """Base class for all package errors."""


class ValidationError(EkedahlError, ValueError):
    """Input that does not satisfy a contract."""


class CapError(EkedahlError):
    """A configured size limit was exceeded."""


class ComputationError(EkedahlError):
    """A well-formed request that cannot be answered."""


# group-core
class GroupTableError(ValidationError):
    pass


class NotLatinSquare(GroupTableError):
    pass


class NoIdentity(GroupTableError):
    pass


class NotAssociative(GroupTableError):
    pass


class NotAPermutation(ValidationError):
    pass


class ClosureTooLarge(CapError):
    pass


class UnknownName(ValidationError):
    pass


class BadParams(ValidationError):
    pass


# abelian-forms / group-cohomology
class NotAHomomorphism(ValidationError):
    pass


class NotFinite(ValidationError):
    pass


class CapExceeded(CapError):
    pass


class ExpressFailed(AssertionError):
    """Internal inconsistency while expressing a class in given generators."""


# kontsevich-ring
class NotAUnit(ComputationError):
    pass


class NotConverging(ComputationError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"sequence does not converge at index {index}")


# cohomology-functor
class DimensionMismatch(ValidationError):
    pass


class HasTorsion(ValidationError):
    pass


class InsufficientPrecision(ComputationError):
    def __init__(self, k, precision):
        self.k = k
        self.precision = precision
        super().__init__(
            f"H^{k} is not determined by an element known modulo Fil^{precision} "
            f"(need k > {2 * precision})"
        )


class MissingTable(ComputationError):
    def __init__(self, symbol, message=None):
        self.symbol = symbol
        super().__init__(message or f"no cohomology table for symbol {symbol!r}")


# ekedahl-pipeline
class DegreeOutOfRange(ValidationError):
    pass


class Inconsistent(ComputationError):
    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"window equation k={k} is violated")


class NegativeIndexNonzero(ComputationError):
    def __init__(self, k):
        self.k = k
        super().__init__(
            f"window k={k} only involves negative indices but its sum is nonzero"
        )


# cli / io
class BadFormat(ValidationError):
    pass


class ValidationFailed(ValidationError):
    pass


class ExprSyntaxError(ValidationError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class PrecisionRequired(ValidationError):
    pass
