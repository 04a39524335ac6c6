class GeprofiError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(GeprofiError, ValueError):
    """An operation was called outside its documented domain."""


class ShapeError(GeprofiError, ValueError):
    """Matrix dimensions do not fit the requested operation."""


class GenericityError(GeprofiError):
    """Resampling budget exhausted before a general-position sample was found."""


class ReductionError(GeprofiError):
    """A rational object could not be reduced modulo the requested prime."""
