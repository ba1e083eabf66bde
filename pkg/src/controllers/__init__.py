"""Controllers for the Omega_A command-line tool."""

from .app_controller import AppController
from .base_controller import BaseController, CommandOption
from .bergman_controller import BergmanController
from .contractivity_controller import ContractivityController
from .domain_controller import DomainController
from .search_controller import SearchController

__all__ = [
    'BaseController',
    'CommandOption',
    'AppController',
    'DomainController',
    'ContractivityController',
    'SearchController',
    'BergmanController'
]
