"""Exception hierarchy shared by all nullfront modules."""


class NullfrontError(Exception):
    """Base class for every error raised by the package."""


class DomainError(NullfrontError, ValueError):
    """An expression was evaluated outside its real domain."""


class ExprSyntaxError(NullfrontError, ValueError):
    """Malformed expression source.

    ``offset`` is the byte offset into the source where parsing failed.
    """

    def __init__(self, message, offset=0, source=""):
        self.offset = offset
        self.source = source
        super().__init__(f"{message} (at offset {offset})")


class UnknownIdentifierError(ExprSyntaxError):
    pass


class UnknownCatalogEntryError(NullfrontError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown catalog entry"


class NotUnitSpeedError(NullfrontError, ValueError):
    pass


class NotOnAdS3Error(NullfrontError, ValueError):
    pass


class DenominatorNearZeroError(NullfrontError, ArithmeticError):
    """m(s) +/- n(s) vanishes, so the front classification does not apply."""

    def __init__(self, s, value, tol):
        self.s = s
        self.value = value
        self.tol = tol
        super().__init__(f"|m +/- n| = {abs(value):.3e} <= {tol:.1e} at s = {s!r}")


class StepError(NullfrontError, ArithmeticError):
    pass


class InvalidInitialFrameError(NullfrontError, ValueError):
    pass


class InsufficientSamplesError(NullfrontError, ValueError):
    pass


class SingularFrameMatrixError(NullfrontError, ArithmeticError):
    pass
