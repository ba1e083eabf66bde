from src.controllers.base_controller import BaseController, CommandOption, parse_point
from src.core.constants import EXIT_OK
from src.core.domains import canonicalize_2d, dual_norm, reconstruct, subspace_distance
from src.core.errors import InputError
from src.models.run_config import RunConfig


class DomainController(BaseController):
    """Dual norms and canonical forms of a single domain."""

    def dual_norm(self, config: RunConfig) -> int:
        D = self.store.load_domain(self.input_path(config, 0, "domain"))
        w = parse_point(config.options.get("point"), D.m)
        method = config.method or "numeric"
        value = dual_norm(D, w, method=method, rng=config.rng())
        self.emit(config, {"method": method, "w": [[z.real, z.imag] for z in w], "dual_norm": float(value)})
        return EXIT_OK

    def canonicalize(self, config: RunConfig) -> int:
        D = self.store.load_domain(self.input_path(config, 0, "domain"))
        form = canonicalize_2d(D)
        payload = form.to_dict()
        payload["reconstruction_distance"] = float(subspace_distance(reconstruct(form), D))
        self.emit(config, payload)
        return EXIT_OK

    def handle_choice(self, choice: CommandOption, config: RunConfig) -> int:
        """Handle domain commands."""
        if choice == CommandOption.DUAL_NORM:
            return self.dual_norm(config)
        elif choice == CommandOption.CANONICALIZE:
            return self.canonicalize(config)
        raise InputError(f"'{choice.value}' is not a domain command")
