class SuperdirectivityError(Exception):
    """Base class for computation failures (CLI exit status 1)."""


class ConfigError(ValueError):
    """Invalid geometry, direction or run configuration (CLI exit status 2)."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DimensionMismatch(ConfigError):
    pass


class ZeroExcitation(ConfigError):
    pass


class FactorizationFailure(SuperdirectivityError):
    """Coupling matrix stayed non positive definite after maximum jitter."""

    def __init__(self, message, condition_estimate):
        super().__init__(f"{message} (condition estimate {condition_estimate:.3e})")
        self.condition_estimate = condition_estimate


class QuadratureNotConverged(SuperdirectivityError):
    pass


class PowerIterationStalled(SuperdirectivityError):
    pass
