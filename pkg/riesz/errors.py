class RieszError(Exception):
    pass


class DomainError(RieszError, ValueError):
    pass


class DivergenceError(RieszError):
    pass


class AccuracyError(RieszError):
    """Quadrature stopped above tolerance; the best estimate is kept."""

    def __init__(self, message: str, estimate: float, error: float) -> None:
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class UnsupportedShapeError(RieszError):
    pass


class ConfigError(RieszError):
    pass


class ReportError(RieszError, OSError):
    pass
