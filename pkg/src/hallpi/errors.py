"""Exception types shared by every module."""


class InputError(ValueError):
    """Malformed input or a violated precondition."""


class ResourceError(RuntimeError):
    """A configured search or degree bound was exceeded."""
