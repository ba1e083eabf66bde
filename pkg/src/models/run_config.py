from typing import Any, List, Optional, Sequence

import numpy as np

from src import __version__
from src.core.constants import CONTRACTIVE_TOL, DEFAULT_SEED
from src.core.errors import InputError
from src.models.base_model import BaseModel


class RunConfig(BaseModel):
    """Options of one command-line run."""

    FORMATS = ("json", "csv", "human")

    def __init__(self, command: str, inputs: Sequence[str] = (), seed: int = DEFAULT_SEED,
                 tol: float = CONTRACTIVE_TOL, fmt: str = "json", method: Optional[str] = None,
                 options: Optional[dict] = None):
        """Validate the format and tolerance."""
        if fmt not in self.FORMATS:
            raise InputError(f"unknown output format '{fmt}'")
        if not tol > 0:
            raise InputError("tolerance must be positive")
        self.command = command
        self.inputs: List[str] = list(inputs)
        self.seed = int(seed)
        self.tol = float(tol)
        self.fmt = fmt
        self.method = method
        self.options = dict(options or {})

    def rng(self) -> np.random.Generator:
        """A fresh generator, so repeated runs draw the same numbers."""
        return np.random.default_rng(self.seed)

    def envelope(self, payload: Any) -> dict:
        """Wrap a report with the tool version, seed and tolerances."""
        return {
            "tool": "omega-a",
            "version": __version__,
            "command": self.command,
            "seed": self.seed,
            "tolerances": {"contractive": self.tol},
            "result": payload,
        }

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "tol": self.tol,
            "format": self.fmt,
            "method": self.method,
            "options": self.options,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return cls(
            command=data["command"],
            inputs=data.get("inputs", ()),
            seed=data.get("seed", DEFAULT_SEED),
            tol=data.get("tol", CONTRACTIVE_TOL),
            fmt=data.get("format", "json"),
            method=data.get("method"),
            options=data.get("options"),
        )
