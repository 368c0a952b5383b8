class HypercolorError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HypercolorError, ValueError):
    """Malformed or out-of-contract input."""


class ConstructionError(HypercolorError):
    """A construction could not satisfy its own postconditions."""


class ConsistencyError(HypercolorError):
    """A caller-supplied value disagrees with a recomputed one."""


class ResourceError(HypercolorError):
    """A size or search budget was exceeded.

    ``partial`` carries whatever was produced before the limit hit.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class BudgetExhausted(ResourceError):
    pass
