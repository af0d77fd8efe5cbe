"""Exception types shared across the package."""


class GraftkitError(Exception):
    """Base class for all errors raised by graftkit."""


class InputError(GraftkitError):
    """A value handed to an operation violates its preconditions."""


class CapacityError(GraftkitError):
    """An exact solver was asked to exceed its configured size limit.

    Capacity limits are never silently downgraded to approximations; the
    caller must either shrink the instance or raise the limit.
    """
