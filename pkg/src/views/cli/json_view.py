import json
from typing import Any

from src.views.cli.base_cli_view import BaseCliView


class JsonCliView(BaseCliView):
    """Full-precision JSON output."""

    def render(self, data: Any) -> str:
        return json.dumps(data, indent=2)
