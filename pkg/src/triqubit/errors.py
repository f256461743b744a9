"""Exception hierarchy. Every domain error is also a ValueError."""


class TriqubitError(Exception):
    pass


class NotNormalized(TriqubitError, ValueError):
    pass


class ZeroVector(TriqubitError, ValueError):
    pass


class BadWeights(TriqubitError, ValueError):
    pass


class NotHermitian(TriqubitError, ValueError):
    pass


class NotDensityMatrix(TriqubitError, ValueError):
    pass


class BadDimension(TriqubitError, ValueError):
    pass


class NotUnitary(TriqubitError, ValueError):
    pass


class BasisError(TriqubitError, ValueError):
    pass


class NotOrthogonal(BasisError):
    pass


class NotComplete(BasisError):
    pass


class WrongKind(BasisError):
    pass


class DegenerateSpan(TriqubitError, ValueError):
    pass


class StateFileError(TriqubitError, ValueError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
