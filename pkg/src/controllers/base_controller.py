import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Optional

import numpy as np

from src.core.constants import EXIT_ERROR, EXIT_INPUT
from src.core.errors import InputError, OmegaError
from src.core.matrix_core import as_cvector
from src.models.run_config import RunConfig
from src.models.spec_store import SpecStore
from src.views.base_view import BaseView

logger = logging.getLogger(__name__)


class CommandOption(str, Enum):
    CHECK = "check"
    CHECK_COMPLETE = "check-complete"
    DUAL_NORM = "dual-norm"
    CANONICALIZE = "canonicalize"
    SEARCH = "search"
    BERGMAN_CURVATURE = "bergman-curvature"
    THRESHOLDS = "thresholds"
    JET_GRAM = "jet-gram"

    @classmethod
    def _missing_(cls, value):
        try:
            return next(m for m in cls if m.value == str(value).lower().replace("_", "-"))
        except StopIteration:
            return None


def parse_point(text: Optional[str], length: Optional[int] = None, name: str = "point") -> np.ndarray:
    """Parse a comma separated list of Python complex literals, e.g. ``0.1,0.2-0.3j``."""
    if text is None:
        raise InputError(f"--{name} is required")
    try:
        values = [complex(part.strip().replace(" ", "")) for part in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse --{name} '{text}'")
    return as_cvector(values, length, name)


class BaseController(ABC):
    """Abstract base controller providing common functionality."""

    def __init__(self, view: BaseView, store: Optional[SpecStore] = None):
        """Initialize controller with a view and a spec store."""
        self.view = view
        self.store = store if store is not None else SpecStore()

    @abstractmethod
    def handle_choice(self, choice: CommandOption, config: RunConfig) -> int:
        """Run one command and return its exit code."""
        pass

    def run(self, choice: CommandOption, config: RunConfig) -> int:
        """Run a command, turning package errors into exit codes."""
        try:
            return self.handle_choice(choice, config)
        except InputError as e:
            self.view.display_error(str(e))
            return EXIT_INPUT
        except OmegaError as e:
            logger.debug("command %s failed", choice.value, exc_info=True)
            self.view.display_error(str(e))
            return EXIT_ERROR

    def emit(self, config: RunConfig, payload: Any):
        """Render the report to stdout or to the --output file."""
        envelope = config.envelope(payload)
        output = config.options.get("output")
        if output:
            self.store.save_text(output, self.view.render(envelope))
            self.view.display_success(f"report written to {output}")
        else:
            self.view.display(envelope)

    def input_path(self, config: RunConfig, index: int, what: str) -> str:
        if len(config.inputs) <= index:
            raise InputError(f"{config.command} needs a {what} file")
        return config.inputs[index]
