"""Exception hierarchy for zdkit."""


class ZDKitError(ValueError):
    """Base class for every error raised by the library."""


class InvalidDimensionError(ZDKitError):
    pass


class InvalidIndexError(ZDKitError):
    pass


class DimensionMismatchError(ZDKitError):
    pass


class NoZeroDivisorsError(ZDKitError):
    """The requested algebra (N < 4) has no zero divisors."""


class InvalidStrutError(ZDKitError):
    pass


class NotAZigzagError(ZDKitError):
    pass


class ImpossibleTypeError(ZDKitError):
    """A ZD-carrying kite with one or three reversed struts."""


class RoundaboutViolation(ZDKitError):
    """Some but not all edges of a hexad carry zero-divisor currents."""


class NoEmanationError(ZDKitError):
    pass


class NotAnEdgeError(ZDKitError):
    pass


class UnsupportedBandError(ZDKitError):
    pass


class NotProperError(ZDKitError):
    pass


class NotSpandrelMemberError(ZDKitError):
    pass


class OracleCalibrationError(ZDKitError):
    pass
