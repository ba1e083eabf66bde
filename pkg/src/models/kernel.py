from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from src.core.errors import InputError
from src.core.matrix_core import cmatrix_from_json, cmatrix_to_json, cvector_from_json, cvector_to_json
from src.models.base_model import BaseModel
from src.models.domain_spec import require


class KernelSpec(BaseModel):
    """A Bergman-type kernel B^lambda on one of the supported domains."""

    KINDS = ("matrix_ball", "nil2", "reinhardt3")

    def __init__(self, kind: str, lam: float, r: Optional[int] = None, s: Optional[int] = None):
        if kind not in self.KINDS:
            raise InputError(f"unknown kernel kind '{kind}', expected one of {self.KINDS}")
        if not lam > 0:
            raise InputError("lambda must be positive")
        if kind == "matrix_ball":
            if r is None or s is None or r < 1 or s < 1:
                raise InputError("matrix_ball needs r, s >= 1")
        self.kind = kind
        self.lam = float(lam)
        self.r = r
        self.s = s

    @property
    def dim(self) -> int:
        """Number of complex coordinates."""
        if self.kind == "matrix_ball":
            return self.r * self.s
        return 2 if self.kind == "nil2" else 3

    @property
    def p(self) -> int:
        """Exponent r + s of the matrix-ball kernel."""
        if self.kind != "matrix_ball":
            raise InputError("p is defined for the matrix ball only")
        return self.r + self.s

    @property
    def nu(self) -> float:
        return self.lam * self.p

    def to_dict(self) -> dict:
        data = {"kind": self.kind, "lambda": self.lam}
        if self.kind == "matrix_ball":
            data.update({"r": self.r, "s": self.s})
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "KernelSpec":
        return cls(
            kind=require(data, "kind", "KernelSpec"),
            lam=require(data, "lambda", "KernelSpec"),
            r=data.get("r"),
            s=data.get("s"),
        )


@dataclass
class CurvatureResult(BaseModel):
    """Curvature coefficient matrix K(w) (positive definite) and localization matrix A0."""

    K: np.ndarray
    A0: np.ndarray
    w: np.ndarray
    method: str = "numeric"

    def to_dict(self) -> dict:
        return {
            "K": cmatrix_to_json(self.K),
            "A0": cmatrix_to_json(self.A0),
            "w": cvector_to_json(self.w),
            "method": self.method,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CurvatureResult":
        return cls(
            K=cmatrix_from_json(data["K"], "K"),
            A0=cmatrix_from_json(data["A0"], "A0"),
            w=cvector_from_json(data["w"], "w"),
            method=data.get("method", "numeric"),
        )


@dataclass
class ThresholdRecord(BaseModel):
    """Verdicts of the contractivity tests at one lambda plus their critical values."""

    example: str
    lam: float
    a_squared: List[float]
    rows: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"example": self.example, "lambda": self.lam, "a_squared": list(self.a_squared), "rows": self.rows}

    @classmethod
    def from_dict(cls, data: dict) -> "ThresholdRecord":
        return cls(example=data["example"], lam=data["lambda"], a_squared=data["a_squared"], rows=data["rows"])
