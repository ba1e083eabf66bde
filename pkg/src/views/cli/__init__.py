"""Command Line Interface views."""

from .base_cli_view import BaseCliView
from .csv_view import CsvCliView
from .human_view import HumanCliView
from .json_view import JsonCliView
from ..base_view import BaseView

VIEWS = {"json": JsonCliView, "csv": CsvCliView, "human": HumanCliView}


def make_view(fmt: str, **kwargs) -> BaseCliView:
    """The CLI view for an output format."""
    return VIEWS[fmt](**kwargs)


__all__ = ['BaseView', 'BaseCliView', 'JsonCliView', 'CsvCliView', 'HumanCliView', 'make_view']
