"""Exception types shared across the board engine."""


class BoardError(Exception):
    """Base class for all board engine errors."""


class NotARectangle(BoardError):
    """Four cells do not form the corners of an axis-aligned rectangle."""


class OutOfRange(BoardError):
    """A resistance lies outside the sensable range of the divider circuit."""


class SaturatedReading(BoardError):
    """An ADC count at a rail (0 or full scale) carries no resistance information."""


class ProtocolError(BoardError):
    """The contact stream or wire protocol violated an ordering or schema contract."""


class AmbiguousGrouping(BoardError):
    """A contact set admits more than one maximal grouping into rectangles."""


class TraceError(BoardError):
    """A session trace failed to parse or validate."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
