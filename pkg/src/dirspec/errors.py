"""Exception types shared across the toolkit."""


class DirspecError(Exception):
    """Base class for all toolkit errors."""


class FieldMismatchError(DirspecError):
    """Two scalars (or vectors, measures, ...) live in different fields."""


class DimensionMismatchError(DirspecError):
    """Operands have incompatible ambient dimensions."""


class ValidationError(DirspecError):
    """A document or constructor argument fails schema/invariant checks."""


class NotReducedError(DirspecError):
    """A classification entry point received a measure containing delta_0."""


class UnsupportedConvolutionError(DirspecError):
    """Convolution pair with no finite carrier description (atom group * box)."""


class ClosureBoundError(DirspecError):
    """Convolution closure exceeded the configured component cap."""


class InvalidDirectionSetError(DirspecError):
    """A direction family cannot be realized (e.g. contains the full space)."""
