"""Exception types raised across the package."""


class LstEdgeError(Exception):
    """Base class for all package errors."""


class PgmError(LstEdgeError, ValueError):
    """Problem decoding a PGM file at a given byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class MalformedHeader(PgmError):
    pass


class UnsupportedMaxval(PgmError):
    pass


class TruncatedPayload(PgmError):
    pass


class EmptyInput(LstEdgeError, ValueError):
    pass


class ImageTooSmall(LstEdgeError, ValueError):
    pass


class DegenerateHistogram(LstEdgeError, ValueError):
    pass


class IncompatibleTruth(LstEdgeError, ValueError):
    pass


class DimensionMismatch(LstEdgeError, ValueError):
    pass


class InsufficientSamples(LstEdgeError, ValueError):
    pass


class DatasetError(LstEdgeError):
    """Dataset directory problem; ``path`` names the offending entry."""

    def __init__(self, message, path):
        super().__init__(f"{message}: {path}")
        self.path = path


class EmptyClass(DatasetError):
    pass


class UnreadableImage(DatasetError):
    pass
