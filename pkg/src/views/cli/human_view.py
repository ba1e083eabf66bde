from typing import Any

from src.views.cli.base_cli_view import BaseCliView, flatten


def fmt(value: Any) -> str:
    """Round numbers to 6 significant digits."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        if len(value) == 2 and all(isinstance(x, float) for x in value):
            re, im = value
            return f"{re:.6g}{im:+.6g}j" if im else f"{re:.6g}"
        return "[" + ", ".join(fmt(x) for x in value) + "]"
    return str(value)


class HumanCliView(BaseCliView):
    """Aligned key/value table for reading in a terminal."""

    def render(self, data: Any) -> str:
        rows = [[key, fmt(value)] for key, value in flatten(data)]
        width = max([len(r[0]) for r in rows] + [3])
        return self.format_table(["key", "value"], rows, [width, 40])
