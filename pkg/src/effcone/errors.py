"""Exception hierarchy shared by all modules."""


class EffconeError(Exception):
    """Base class for domain errors (bad input, unsupported range)."""


class DimensionMismatchError(EffconeError, ValueError):
    pass


class InvalidModulusError(EffconeError, ValueError):
    pass


class UnsupportedError(EffconeError):
    """Raised for line counts outside the range where data is known."""


class NotEffectiveError(EffconeError):
    pass


class ConeError(EffconeError):
    """Degenerate cone input (zero-dimensional, not pointed, ...)."""


class RayNotInConeError(ConeError):
    pass


class PreconditionError(EffconeError):
    pass


class DegenerateFieldError(EffconeError):
    """Random sampling over the prime field kept producing special configurations."""


class ConfigDegenerateError(EffconeError):
    pass
