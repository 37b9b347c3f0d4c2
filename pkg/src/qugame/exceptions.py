"""Exception hierarchy shared by every qugame module."""


class QugameError(Exception):
    """Base class for all errors raised by qugame."""


class DimensionMismatch(QugameError, ValueError):
    pass


class NotUnitKet(QugameError, ValueError):
    pass


class NonUnitaryInput(QugameError, ValueError):
    """A matrix expected to be unitary failed the unitarity check."""


class ZeroProjection(QugameError, ArithmeticError):
    """The target is orthogonal to the subspace, so the closest point is not unique."""


class Indifferent(QugameError, ArithmeticError):
    """Every response reaches the target at distance pi/2; no best response is singled out."""


class NormalizationFailure(QugameError, ArithmeticError):
    """The raw EWL amplitudes did not have the expected constant norm."""


class GameFormatError(QugameError, ValueError):
    """A game or matrix file could not be parsed.

    The message always starts with the location inside the document
    (for example ``outcomes[1][0]``) followed by the reason.
    """

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")
