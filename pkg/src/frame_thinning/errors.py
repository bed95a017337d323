"""Package-wide exception base."""


class FrameThinningError(Exception):
    """Base class for every error raised by the toolkit."""
