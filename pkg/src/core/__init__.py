"""Core numerics, constants and errors for the Omega_A toolkit."""

from .constants import (
    CONTRACTIVE_TOL,
    DEFAULT_SEED,
    EXIT_DIAGONALIZABLE,
    EXIT_ERROR,
    EXIT_EXHAUSTED,
    EXIT_INPUT,
    EXIT_NOT_CONTRACTIVE,
    EXIT_OK,
    PSD_TOL,
)
from .errors import (
    DegenerateMetricError,
    InputError,
    NoCounterexampleExpected,
    OmegaError,
    SearchExhausted,
    SeriesTruncationError,
    UnsupportedDomainError,
)

__all__ = [
    "CONTRACTIVE_TOL",
    "DEFAULT_SEED",
    "EXIT_DIAGONALIZABLE",
    "EXIT_ERROR",
    "EXIT_EXHAUSTED",
    "EXIT_INPUT",
    "EXIT_NOT_CONTRACTIVE",
    "EXIT_OK",
    "PSD_TOL",
    "DegenerateMetricError",
    "InputError",
    "NoCounterexampleExpected",
    "OmegaError",
    "SearchExhausted",
    "SeriesTruncationError",
    "UnsupportedDomainError",
]
