"""Exception hierarchy shared by all mmx modules.

Error class names double as the machine-readable ``error`` codes in the
CLI's JSON output, so renaming one is a wire-format change.
"""


class MmxError(Exception):
    """Base class for all structured engine errors."""


class ZeroInput(MmxError):
    pass


class Unsupported(MmxError):
    pass


class NotPrime(MmxError):
    pass


class InvalidRing(MmxError):
    pass


class NotArtinian(MmxError):
    pass


class NotNoetherian(MmxError):
    pass


class NotTorsion(MmxError):
    pass


class NotRepresentable(MmxError):
    """The value exists mathematically but leaves the block class."""


class NotStabilizing(MmxError):
    pass


class StabilizationFailed(MmxError):
    pass


class InvalidIndex(MmxError):
    pass


class ParseError(MmxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSuite(MmxError):
    pass
