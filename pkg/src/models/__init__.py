"""Data models for the Omega_A toolkit."""

from .base_model import BaseModel
from .domain_spec import CanonicalForm2D, DomainSpec
from .g_function import BSet, GFunctionSpec, SearchResult
from .kernel import CurvatureResult, KernelSpec, ThresholdRecord
from .reports import ClosedFormResult, ContractivityReport
from .run_config import RunConfig
from .spec_store import SpecStore
from .vtuple import VTuple

__all__ = [
    "BaseModel",
    "DomainSpec",
    "CanonicalForm2D",
    "VTuple",
    "ContractivityReport",
    "ClosedFormResult",
    "GFunctionSpec",
    "BSet",
    "SearchResult",
    "KernelSpec",
    "CurvatureResult",
    "ThresholdRecord",
    "RunConfig",
    "SpecStore",
]
