from typing import Optional, Tuple


class OmegaError(Exception):
    """Base class for all errors raised by the package."""


class InputError(OmegaError, ValueError):
    """Invalid user input: shapes, non-finite entries, malformed JSON."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class UnsupportedDomainError(InputError):
    """A closed form was requested for a domain it does not cover."""


class DegenerateMetricError(OmegaError):
    """The curvature matrix is singular."""


class SeriesTruncationError(OmegaError):
    """A truncated kernel series failed to reach the requested accuracy."""

    def __init__(self, message: str, tail_bound: float):
        super().__init__(f"{message} (tail bound {tail_bound:.3e})")
        self.tail_bound = tail_bound


class NoCounterexampleExpected(OmegaError):
    """The pair is simultaneously diagonalizable, so contractive maps are completely contractive."""


class SearchExhausted(OmegaError):
    """The counterexample scan finished without a certificate."""

    def __init__(self, message: str, lambda_interval: Tuple[float, float], scanned: int):
        super().__init__(
            f"{message} (scanned {scanned} values of lambda in "
            f"[{lambda_interval[0]:.3g}, {lambda_interval[1]:.3g}])"
        )
        self.lambda_interval = lambda_interval
        self.scanned = scanned
