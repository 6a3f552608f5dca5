"""Exception types shared across the package."""


class TricorrError(Exception):
    """Base class for all errors raised by tricorr."""


class SchemaError(TricorrError):
    """A file or document violates one of the JSON schemas.

    ``key`` names the offending field so callers can point at it.
    """

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


class ConvergenceError(TricorrError):
    """A numerical routine failed to converge; no partial result is returned."""


class CanonicalizationError(TricorrError):
    """The canonical-form search failed for both candidate rotations.

    ``residual`` is the best per-amplitude mismatch that was reached.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual
