"""Exception hierarchy shared across the package."""


class MirrorNetError(Exception):
    """Base class for every error raised by this package."""


class FormatError(MirrorNetError):
    """A file or byte stream is not in the expected format."""


class TruncationError(FormatError):
    """Declared size disagrees with the actual payload."""


class UnsupportedError(FormatError):
    """Well-formed input using a feature this package does not handle."""


class VersionError(FormatError):
    """Unknown or unsupported model file header."""


class ShapeError(MirrorNetError):
    """Vector or matrix dimensions do not agree."""


class DomainError(MirrorNetError):
    """A numeric value lies outside its documented domain."""


class UsageError(MirrorNetError):
    """An operation was invoked in a way that cannot be satisfied (empty inputs etc.)."""


class ValidationError(MirrorNetError):
    """A structural invariant does not hold."""


class NumericError(MirrorNetError):
    """Non-finite values appeared where finite ones are required."""
