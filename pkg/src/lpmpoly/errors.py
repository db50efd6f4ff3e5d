"""Exception hierarchy shared by every module."""


class LpmError(ValueError):
    """Base class for all errors raised by lpmpoly."""


class LengthMismatch(LpmError):
    pass


class RankMismatch(LpmError):
    pass


class PathsCross(LpmError):
    pass


class InvalidRuns(LpmError):
    pass


class InvalidStepVector(LpmError):
    pass


class TooLarge(LpmError):
    """An enumeration would exceed its configured cap."""


class DimensionMismatch(LpmError):
    pass


class Disconnected(LpmError):
    pass


class NotInPolytope(LpmError):
    pass


class NotInQ(LpmError):
    pass


class NonIntegral(LpmError):
    pass


class NotNaturallyLabeled(LpmError):
    pass


class InvalidPoset(LpmError):
    pass


class IndexOutOfRange(LpmError, IndexError):
    pass


class ParseError(LpmError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class MethodInapplicable(LpmError):
    pass


class UnknownSuite(LpmError):
    pass


class InterpolationMismatch(LpmError):
    """An interpolated polynomial disagrees with a count at an extra node."""
