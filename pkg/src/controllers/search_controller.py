import logging

from src.controllers.base_controller import BaseController, CommandOption
from src.core.constants import EXIT_DIAGONALIZABLE, EXIT_ERROR, EXIT_EXHAUSTED, EXIT_OK
from src.core.counterexample import certify, search
from src.core.errors import InputError, NoCounterexampleExpected, SearchExhausted
from src.models.run_config import RunConfig

logger = logging.getLogger(__name__)


class SearchController(BaseController):
    """Counterexample search on a pair of 2 x 2 matrices."""

    def search(self, config: RunConfig) -> int:
        D = self.store.load_domain(self.input_path(config, 0, "domain"))
        try:
            result = search(D, rng=config.rng())
        except NoCounterexampleExpected as e:
            self.view.display_error(str(e))
            self.emit(config, {"status": "diagonalizable", "message": str(e)})
            return EXIT_DIAGONALIZABLE
        except SearchExhausted as e:
            self.view.display_error(str(e))
            self.emit(config, {
                "status": "exhausted",
                "lambda_interval": list(e.lambda_interval),
                "scanned": e.scanned,
            })
            return EXIT_EXHAUSTED
        report = certify(D, result, rng=config.rng())
        if not report.contractive or report.completely_contractive_on_PA:
            logger.warning("certificate did not re-check: contractive=%s, P_A=%s",
                           report.contractive, report.completely_contractive_on_PA)
            self.view.display_error("the counterexample failed its re-check")
            self.emit(config, {"status": "uncertified", "certificate": result.to_dict(), "check": report.to_dict()})
            return EXIT_ERROR
        self.emit(config, {"status": "found", "certificate": result.to_dict(), "check": report.to_dict()})
        return EXIT_OK

    def handle_choice(self, choice: CommandOption, config: RunConfig) -> int:
        """Handle the search command."""
        if choice == CommandOption.SEARCH:
            return self.search(config)
        raise InputError(f"'{choice.value}' is not a search command")
