from typing import List

import numpy as np

from src.controllers.base_controller import BaseController, CommandOption, parse_point
from src.core.bergman import curvature, jet_gram, parse_example, threshold_table
from src.core.constants import EXIT_ERROR, EXIT_OK, THRESHOLD_LAMBDAS
from src.core.errors import InputError
from src.core.matrix_core import cmatrix_to_json, schur_psd_check
from src.models.kernel import KernelSpec
from src.models.run_config import RunConfig


class BergmanController(BaseController):
    """Curvature, jet Gram matrices and lambda-threshold tables."""

    def _kernel(self, config: RunConfig) -> KernelSpec:
        opts = config.options
        kind = opts.get("kernel")
        if kind is None:
            raise InputError("--kernel is required")
        lam = opts.get("lambda")
        return KernelSpec(kind, 1.0 if lam is None else lam, opts.get("r"), opts.get("s"))

    def _point(self, config: RunConfig, spec: KernelSpec) -> np.ndarray:
        text = config.options.get("point")
        return np.zeros(spec.dim, dtype=np.complex128) if text is None else parse_point(text, spec.dim)

    def _lambdas(self, config: RunConfig) -> List[float]:
        opts = config.options
        if opts.get("lambda_range") is not None:
            start, stop, num = opts["lambda_range"]
            if int(num) < 1 or not start > 0 or not stop > 0:
                raise InputError("--lambda-range needs positive START STOP and NUM >= 1")
            return [float(x) for x in np.linspace(start, stop, int(num))]
        if opts.get("lambda") is not None:
            return [float(opts["lambda"])]
        return [float(x) for x in THRESHOLD_LAMBDAS]

    def bergman_curvature(self, config: RunConfig) -> int:
        spec = self._kernel(config)
        result = curvature(spec, self._point(config, spec), method=config.method or "auto")
        self.emit(config, {"kernel": spec.to_dict(), **result.to_dict()})
        return EXIT_OK

    def jet_gram(self, config: RunConfig) -> int:
        spec = self._kernel(config)
        J = jet_gram(spec, self._point(config, spec))
        ok, lam_min = schur_psd_check(J)
        positive = bool(ok and lam_min > 0.0)
        self.emit(config, {
            "kernel": spec.to_dict(),
            "jet_gram": cmatrix_to_json(J),
            "positive_definite": positive,
            "smallest_eigenvalue": float(lam_min),
        })
        if not positive:
            self.view.display_error(f"jet Gram matrix is not positive definite (smallest eigenvalue {lam_min:.3e})")
            return EXIT_ERROR
        return EXIT_OK

    def thresholds(self, config: RunConfig) -> int:
        opts = config.options
        example = opts.get("example") or opts.get("kernel")
        if example is None:
            raise InputError("--example is required")
        if example == "matrix_ball":
            example = f"matrix_ball({opts.get('r')},{opts.get('s')})"
        parse_example(example)
        records = threshold_table(example, self._lambdas(config))
        self.emit(config, [record.to_dict() for record in records])
        return EXIT_OK

    def handle_choice(self, choice: CommandOption, config: RunConfig) -> int:
        """Handle kernel commands."""
        if choice == CommandOption.BERGMAN_CURVATURE:
            return self.bergman_curvature(config)
        elif choice == CommandOption.JET_GRAM:
            return self.jet_gram(config)
        elif choice == CommandOption.THRESHOLDS:
            return self.thresholds(config)
        raise InputError(f"'{choice.value}' is not a kernel command")
