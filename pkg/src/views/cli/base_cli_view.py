import sys
from typing import Any, Iterator, List, Optional, TextIO, Tuple

from src.views.base_view import BaseView


def flatten(data: Any, prefix: str = "") -> Iterator[Tuple[str, Any]]:
    """Yield (dotted key, leaf) pairs; [re, im] pairs and numeric vectors stay whole."""
    if isinstance(data, dict):
        for key, value in data.items():
            yield from flatten(value, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(data, list) and data and any(isinstance(x, (dict, list)) for x in data) \
            and not all(isinstance(x, list) and len(x) == 2 and all(isinstance(y, float) for y in x) for x in data):
        for i, value in enumerate(data):
            yield from flatten(value, f"{prefix}[{i}]")
    else:
        yield prefix, data


class BaseCliView(BaseView):
    """Base class for CLI views providing common display functionality."""

    def __init__(self, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        """Write reports to ``out`` and messages to ``err`` (stdout/stderr by default)."""
        self.out = out
        self.err = err

    @property
    def _out(self) -> TextIO:
        return self.out if self.out is not None else sys.stdout

    @property
    def _err(self) -> TextIO:
        return self.err if self.err is not None else sys.stderr

    def display(self, data: Any = None):
        """Print the rendered report."""
        text = self.render(data)
        self._out.write(text if text.endswith("\n") else text + "\n")

    def display_header(self, title: str):
        """Display a header with title."""
        print(f"\n{title}", file=self._out)

    def display_error(self, message: str):
        """Display an error message."""
        print(f"Error: {message}", file=self._err)

    def display_success(self, message: str):
        """Display a success message."""
        print(f"Success: {message}", file=self._err)

    def format_table(self, headers: List[str], rows: List[List[Any]], widths: List[int]) -> str:
        """Data in tabular format."""
        row_format = " ".join("{:<" + str(w) + "}" for w in widths)
        lines = [row_format.format(*headers), "-" * (sum(widths) + len(widths) - 1)]
        lines.extend(row_format.format(*[str(x) for x in row]) for row in rows)
        return "\n".join(lines)
