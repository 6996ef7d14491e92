"""Exception hierarchy shared by every module of the package."""


class OACDError(Exception):
    """Base class for all package errors."""


class InputError(OACDError, ValueError):
    """Malformed user input (points, codes, CLI arguments)."""


class InexactInput(InputError):
    pass


class CoincidentPoints(InputError):
    pass


class CoincidentLines(OACDError):
    pass


class DegenerateInput(OACDError):
    """Generator set is not in general position.

    The offending :class:`~oacd.exact_geom.ValidationReport` is kept on
    ``self.report``.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(f"generator set is degenerate: {report.summary()}")


class MalformedUnit(OACDError):
    pass


class LengthMismatch(OACDError, ValueError):
    pass


class BadCode(InputError):
    pass


class BadDigit(BadCode):
    pass


class NotAParticle(OACDError, ValueError):
    pass


class KindMismatch(OACDError, ValueError):
    pass


class NotAnEdge(KindMismatch):
    pass


class NotACell(KindMismatch):
    pass


class EmptyCluster(OACDError, ValueError):
    pass


class BboxTooSmall(InputError):
    pass


class InvariantViolation(OACDError, AssertionError):
    """Two routes that must agree on valid codes did not."""
