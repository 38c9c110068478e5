"""Exception hierarchy shared by every slicmag module."""


class SlicmagError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(SlicmagError, ValueError):
    """A caller passed data that violates an operation's contract."""


class ImageIOError(SlicmagError, OSError):
    """The file could not be opened, read or written."""


class UnsupportedFormatError(ImageIOError):
    """The file is readable but its container or pixel layout is not supported."""


class UnsupportedBitDepthError(UnsupportedFormatError):
    """Samples are wider than 8 bits."""


class CorruptImageError(ImageIOError):
    """The header parsed but the pixel stream is truncated or malformed."""
