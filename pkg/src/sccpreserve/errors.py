"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller violated a documented precondition (bad vertex, edge id, ...)."""


class CapabilityError(RuntimeError):
    """An exhaustive search would exceed the configured enumeration limits.

    Raised instead of silently truncating; limits can be raised explicitly
    (function arguments) or via SCC_PRESERVE_* environment variables.
    """
