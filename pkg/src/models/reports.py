from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from src.core.matrix_core import cvector_from_json, cvector_to_json
from src.models.base_model import BaseModel


@dataclass
class ContractivityReport(BaseModel):
    """Verdicts and witness data for one (DomainSpec, VTuple) query."""

    contractive: bool
    completely_contractive_on_PA: bool
    linear_map_norm: float
    tensor_norm: float
    witness_beta: np.ndarray
    attained_infimum: float
    method: str = "numeric"
    converged: bool = True
    witness_x: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {
            "contractive": bool(self.contractive),
            "completely_contractive_on_PA": bool(self.completely_contractive_on_PA),
            "linear_map_norm": float(self.linear_map_norm),
            "tensor_norm": float(self.tensor_norm),
            "witness_beta": cvector_to_json(self.witness_beta),
            "attained_infimum": float(self.attained_infimum),
            "method": self.method,
            "converged": bool(self.converged),
            "witness_x": None if self.witness_x is None else cvector_to_json(self.witness_x),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ContractivityReport":
        data = dict(data)
        data["witness_beta"] = cvector_from_json(data["witness_beta"], "witness_beta")
        if data.get("witness_x") is not None:
            data["witness_x"] = cvector_from_json(data["witness_x"], "witness_x")
        return cls(**data)


@dataclass
class ClosedFormResult(BaseModel):
    """A printed closed-form criterion next to the exact answer it is meant to decide.

    ``verdict``/``value`` follow the printed inequality (``lhs`` against
    ``rhs``); ``exact_verdict``/``exact_value`` come from a direct
    computation. ``agree`` is False when the two verdicts differ.
    """

    name: str
    verdict: Optional[bool]
    value: Optional[float]
    exact_verdict: bool
    exact_value: float
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    extra: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.verdict is not None and self.verdict == self.exact_verdict

    def to_dict(self) -> dict:
        data = asdict(self)
        for key in ("verdict", "exact_verdict"):
            if data[key] is not None:
                data[key] = bool(data[key])
        data["agree"] = self.agree
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ClosedFormResult":
        data = {k: v for k, v in data.items() if k != "agree"}
        return cls(**data)
