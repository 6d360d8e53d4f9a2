"""Exception hierarchy shared by every module."""


class MubError(Exception):
    """Base class for all errors raised by mubkit."""


class CompositeDimension(MubError, ValueError):
    pass


class IndexOutOfRange(MubError, IndexError):
    pass


class ZeroOperand(MubError, ValueError):
    pass


class DimensionMismatch(MubError, ValueError):
    pass


class NotHermitian(MubError, ValueError):
    pass


class NoConvergence(MubError, RuntimeError):
    pass


class InconsistentRows(MubError, ValueError):
    """Coefficient rows do not share a common sum, so no operator produces them."""


class UnsupportedDimension(MubError, ValueError):
    pass


class NotAState(MubError, ValueError):
    pass


class MissingBasis(MubError, ValueError):
    pass
