"""Exception types raised across the package."""


class HullFilterError(Exception):
    """Base class for every error raised by hullfilter."""


class EmptySet(HullFilterError, ValueError):
    """An operation that needs at least one point received none."""


class NonFiniteCoordinate(HullFilterError, ValueError):
    pass


class PrecisionMismatch(HullFilterError, ValueError):
    """Two inputs (or a file and a request) disagree on F32 vs F64."""


class DegeneratePolygon(HullFilterError):
    """Fewer than three distinct, non-collinear support vertices.

    Callers are expected to skip filtering and keep every point.
    """


class InvalidSegmentSize(HullFilterError, ValueError):
    pass


class InvalidSpec(HullFilterError, ValueError):
    pass


class FormatError(HullFilterError):
    """A point file has a bad header, a bad tag, or the wrong length."""


class CorrectnessFailure(HullFilterError):
    """The filtered hull differed from the unfiltered hull."""


class ResourceError(HullFilterError):
    pass
