from typing import Optional

import numpy as np

from src.controllers.base_controller import BaseController, CommandOption
from src.core.constants import EXIT_NOT_CONTRACTIVE, EXIT_OK
from src.core.contractivity import (
    complete_closed_diag3,
    complete_closed_I_E12,
    contractive_closed_diag3,
    contractive_closed_I_E12,
    contractive_general,
    tensor_norm,
)
from src.core.errors import InputError, UnsupportedDomainError
from src.models.domain_spec import DomainSpec, standard_domain
from src.models.reports import ClosedFormResult
from src.models.run_config import RunConfig
from src.models.vtuple import VTuple


def closed_family(D: DomainSpec, V: VTuple) -> Optional[str]:
    """'nil2' or 'reinhardt3' when a printed closed form covers (D, V)."""
    for name in ("nil2", "reinhardt3"):
        S = standard_domain(name)
        if D.m == S.m and D.n == S.n and np.allclose(D.stacked(), S.stacked()):
            if name == "nil2" and V.p == 1 and V.q == 2:
                return name
            if name == "reinhardt3" and V.p == 1 and V.q == 3:
                rows = V.rows()
                if np.allclose(rows, np.diag(np.diag(rows))):
                    return name
    return None


class ContractivityController(BaseController):
    """Contractivity and complete-contractivity checks of L_V."""

    def _load(self, config: RunConfig):
        D = self.store.load_domain(self.input_path(config, 0, "domain"))
        V = self.store.load_vtuple(self.input_path(config, 1, "VTuple"))
        if V.m != D.m:
            raise InputError(f"VTuple has {V.m} matrices but the domain has {D.m}")
        return D, V

    def _closed(self, D: DomainSpec, V: VTuple, complete: bool, tol: float) -> ClosedFormResult:
        family = closed_family(D, V)
        if family is None:
            raise UnsupportedDomainError("closed forms cover (I, E12) with rows in C^2 and (E11, E12, E22) with diagonal rows")
        rows = V.rows()
        if family == "nil2":
            fn = complete_closed_I_E12 if complete else contractive_closed_I_E12
            return fn(rows[0], rows[1], tol=tol)
        fn = complete_closed_diag3 if complete else contractive_closed_diag3
        return fn(*np.diag(rows), tol=tol)

    def check(self, config: RunConfig) -> int:
        D, V = self._load(config)
        if config.method == "closed":
            result = self._closed(D, V, False, config.tol)
            self.emit(config, result.to_dict())
            return EXIT_OK if result.exact_verdict else EXIT_NOT_CONTRACTIVE
        if config.method not in (None, "numeric"):
            raise InputError(f"unknown check method '{config.method}'")
        report = contractive_general(D, V, tol=config.tol, rng=config.rng())
        self.emit(config, report.to_dict())
        return EXIT_OK if report.contractive else EXIT_NOT_CONTRACTIVE

    def check_complete(self, config: RunConfig) -> int:
        D, V = self._load(config)
        if config.method != "numeric" and closed_family(D, V) is not None:
            result = self._closed(D, V, True, config.tol)
            self.emit(config, result.to_dict())
            return EXIT_OK if result.exact_verdict else EXIT_NOT_CONTRACTIVE
        if config.method == "closed":
            raise UnsupportedDomainError("no closed complete test for this domain")
        tn = tensor_norm(D, V)
        ok = tn <= 1.0 + config.tol
        self.emit(config, {"tensor_norm": float(tn), "completely_contractive_on_PA": bool(ok)})
        return EXIT_OK if ok else EXIT_NOT_CONTRACTIVE

    def handle_choice(self, choice: CommandOption, config: RunConfig) -> int:
        """Handle contractivity commands."""
        if choice == CommandOption.CHECK:
            return self.check(config)
        elif choice == CommandOption.CHECK_COMPLETE:
            return self.check_complete(config)
        raise InputError(f"'{choice.value}' is not a contractivity command")
