"""Exception hierarchy shared by every module of the package."""


class PolygonSpaceError(ValueError):
    """Base class for all errors raised by :mod:`polyspaces`."""


class NonGeneric(PolygonSpaceError):
    """A signed sum of the lengths vanishes, so collinear polygons exist."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Inconsistent(PolygonSpaceError):
    pass


class DimensionMismatch(PolygonSpaceError):
    pass


class GradingMismatch(PolygonSpaceError):
    pass


class NonUnitLeadingCoefficient(PolygonSpaceError):
    """Raised when integer Buchberger meets a leading coefficient other than a unit."""


class NotConfluent(PolygonSpaceError):
    pass


class InexactDivision(PolygonSpaceError):
    """A polynomial division that must be exact left a remainder."""


class EvenEdgeCount(PolygonSpaceError):
    pass


class OddMiddleDegree(PolygonSpaceError):
    pass


class EmptySpace(PolygonSpaceError):
    pass


class ParityViolation(PolygonSpaceError):
    pass


class TooLarge(PolygonSpaceError):
    pass
