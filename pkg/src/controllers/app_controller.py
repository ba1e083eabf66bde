from typing import Optional

from src.controllers.base_controller import BaseController, CommandOption
from src.controllers.bergman_controller import BergmanController
from src.controllers.contractivity_controller import ContractivityController
from src.controllers.domain_controller import DomainController
from src.controllers.search_controller import SearchController
from src.core.constants import EXIT_INPUT
from src.models.run_config import RunConfig
from src.models.spec_store import SpecStore
from src.views.base_view import BaseView


class AppController(BaseController):
    """Routes a subcommand to the controller that owns it."""

    def __init__(self, view: BaseView, store: Optional[SpecStore] = None):
        """Initialize with a view and sub-controllers sharing it."""
        super().__init__(view, store)
        self.domain_controller = DomainController(view, self.store)
        self.contractivity_controller = ContractivityController(view, self.store)
        self.search_controller = SearchController(view, self.store)
        self.bergman_controller = BergmanController(view, self.store)

    def handle_choice(self, choice: CommandOption, config: RunConfig) -> int:
        """Handle a subcommand."""
        if choice in (CommandOption.CHECK, CommandOption.CHECK_COMPLETE):
            return self.contractivity_controller.run(choice, config)
        elif choice in (CommandOption.DUAL_NORM, CommandOption.CANONICALIZE):
            return self.domain_controller.run(choice, config)
        elif choice == CommandOption.SEARCH:
            return self.search_controller.run(choice, config)
        elif choice in (CommandOption.BERGMAN_CURVATURE, CommandOption.JET_GRAM, CommandOption.THRESHOLDS):
            return self.bergman_controller.run(choice, config)
        return EXIT_INPUT

    def execute(self, config: RunConfig) -> int:
        """Look up ``config.command`` and run it."""
        try:
            choice = CommandOption(config.command)
        except ValueError:
            self.view.display_error(f"Invalid command '{config.command}'")
            return EXIT_INPUT
        return self.run(choice, config)
