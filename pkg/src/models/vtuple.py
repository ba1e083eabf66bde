from typing import List, Sequence

import numpy as np

from src.core.errors import InputError
from src.core.matrix_core import as_cmatrix, as_cvector, cmatrix_from_json, cmatrix_to_json
from src.models.base_model import BaseModel
from src.models.domain_spec import require


class VTuple(BaseModel):
    """An m-tuple of p x q matrices defining the linear map z -> z_1 V_1 + ... + z_m V_m."""

    def __init__(self, vs: Sequence):
        if len(vs) < 1:
            raise InputError("a VTuple needs at least one matrix")
        self.vs: List[np.ndarray] = [as_cmatrix(V, f"V{i + 1}") for i, V in enumerate(vs)]
        shape = self.vs[0].shape
        for i, V in enumerate(self.vs):
            if V.shape != shape:
                raise InputError(f"V{i + 1} must be {shape[0]}x{shape[1]}, got {V.shape[0]}x{V.shape[1]}")

    @classmethod
    def from_rows(cls, rows: Sequence) -> "VTuple":
        """Build the p = 1 tuple whose V_i is the row vector rows[i]."""
        return cls([as_cvector(r, name=f"v{i + 1}")[np.newaxis, :] for i, r in enumerate(rows)])

    @property
    def m(self) -> int:
        return len(self.vs)

    @property
    def p(self) -> int:
        return self.vs[0].shape[0]

    @property
    def q(self) -> int:
        return self.vs[0].shape[1]

    def rows(self) -> np.ndarray:
        """For p = 1, the m x q matrix whose rows are the v_i."""
        if self.p != 1:
            raise InputError("rows() needs 1 x q matrices")
        return np.array([V[0] for V in self.vs])

    def to_dict(self) -> dict:
        return {"m": self.m, "p": self.p, "q": self.q, "vs": [cmatrix_to_json(V) for V in self.vs]}

    @classmethod
    def from_dict(cls, data: dict) -> "VTuple":
        m = require(data, "m", "VTuple")
        vs = [cmatrix_from_json(V, f"V{i + 1}") for i, V in enumerate(require(data, "vs", "VTuple"))]
        if len(vs) != m:
            raise InputError(f"VTuple declares m={m} but lists {len(vs)} matrices")
        vt = cls(vs)
        if (vt.p, vt.q) != (data.get("p", vt.p), data.get("q", vt.q)):
            raise InputError(f"VTuple declares {data.get('p')}x{data.get('q')} but matrices are {vt.p}x{vt.q}")
        return vt
