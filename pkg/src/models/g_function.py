from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from src.core.errors import InputError
from src.core.matrix_core import as_cmatrix, cmatrix_from_json, cmatrix_to_json, cvector_from_json, cvector_to_json
from src.models.base_model import BaseModel
from src.models.domain_spec import DomainSpec, require


class GFunctionSpec(BaseModel):
    """The pair (A1, A2) with the diagonal parameters (v, w) of the g-function."""

    def __init__(self, A1, A2, v: complex, w: complex):
        self.A1 = as_cmatrix(A1, "A1")
        self.A2 = as_cmatrix(A2, "A2")
        if self.A1.shape != (2, 2) or self.A2.shape != (2, 2):
            raise InputError("the g-function is defined for 2x2 matrices")
        self.v = complex(v)
        self.w = complex(w)

    @classmethod
    def from_domain(cls, D: DomainSpec, v: complex, w: complex) -> "GFunctionSpec":
        if D.m != 2 or D.n != 2:
            raise InputError("the g-function needs a pair of 2x2 matrices")
        return cls(D.mats[0], D.mats[1], v, w)

    def admissible(self) -> bool:
        """|v| <= 1/||A1*||, the range where g >= 0 decides contractivity."""
        return abs(self.v) * np.linalg.norm(self.A1, 2) <= 1.0 + 1e-12

    def to_dict(self) -> dict:
        return {
            "A1": cmatrix_to_json(self.A1),
            "A2": cmatrix_to_json(self.A2),
            "v": [self.v.real, self.v.imag],
            "w": [self.w.real, self.w.imag],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GFunctionSpec":
        v = require(data, "v", "GFunctionSpec")
        w = require(data, "w", "GFunctionSpec")
        return cls(
            cmatrix_from_json(require(data, "A1", "GFunctionSpec"), "A1"),
            cmatrix_from_json(require(data, "A2", "GFunctionSpec"), "A2"),
            complex(*v),
            complex(*w),
        )


@dataclass
class BSet(BaseModel):
    """Unit kernel vectors of the pencils A2* - mu A1* and A1* - nu A2*."""

    vectors: List[np.ndarray]
    eigen_params: List[complex]
    pencils: List[str]
    multiplicities: List[int]
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "vectors": [cvector_to_json(b) for b in self.vectors],
            "eigen_params": [[complex(x).real, complex(x).imag] for x in self.eigen_params],
            "pencils": list(self.pencils),
            "multiplicities": list(self.multiplicities),
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BSet":
        return cls(
            vectors=[cvector_from_json(b, "beta") for b in data["vectors"]],
            eigen_params=[complex(*x) for x in data["eigen_params"]],
            pencils=list(data["pencils"]),
            multiplicities=list(data["multiplicities"]),
            degenerate=bool(data.get("degenerate", False)),
        )


@dataclass
class SearchResult(BaseModel):
    """A certified contractive but not P_A-contractive diagonal map, or the failed attempt."""

    v0: complex
    lambda0: float
    beta0: np.ndarray
    g_min: float
    complete_test: float
    verdict: bool
    route: str = "pencil"
    transposed: bool = False
    bset_g_values: List[float] = field(default_factory=list)
    tensor_norm: float = float("nan")
    embedding_gap: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "v0": [self.v0.real, self.v0.imag],
            "lambda0": float(self.lambda0),
            "beta0": cvector_to_json(self.beta0),
            "g_min": float(self.g_min),
            "complete_test": float(self.complete_test),
            "verdict": bool(self.verdict),
            "route": self.route,
            "transposed": bool(self.transposed),
            "bset_g_values": [float(g) for g in self.bset_g_values],
            "tensor_norm": float(self.tensor_norm),
            "embedding_gap": self.embedding_gap,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SearchResult":
        data = dict(data)
        data["v0"] = complex(*data["v0"])
        data["beta0"] = cvector_from_json(data["beta0"], "beta0")
        return cls(**data)
