"""Exception types shared across the package."""


class FFTPathError(Exception):
    """Base class for every package-specific error."""


class SizeError(FFTPathError, ValueError):
    """Transform or block size is not a supported power of two."""


class ShapeError(FFTPathError, ValueError):
    """Mismatched buffer lengths or stage spans."""


class StageError(FFTPathError, ValueError):
    """A pass does not fit at the requested stage (overflow or misplacement)."""


class ConfigError(FFTPathError, ValueError):
    """Invalid configuration value."""


class PlanError(FFTPathError, ValueError):
    """Arrangement cannot be compiled into an executable plan."""


class ModelError(FFTPathError, ValueError):
    """A cost model carries an unusable weight (negative, NaN, infinite)."""


class IncompleteModelError(FFTPathError, LookupError):
    """A reachable edge has no weight in the cost model."""


class CostModelError(FFTPathError, ValueError):
    """A cost-model document failed parsing or validation.

    ``code`` identifies the failure class (stable strings, e.g. "bad-edge",
    "bad-ns", "duplicate-entry", "prev-mismatch") so callers and tests can
    distinguish rejection reasons without string matching on the message.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
