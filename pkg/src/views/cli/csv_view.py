import csv
import io
from typing import Any, List

from src.views.cli.base_cli_view import BaseCliView, flatten

THRESHOLD_COLUMNS = [
    "example",
    "lambda",
    "test",
    "verdict",
    "computed_critical_lambda",
    "paper_stated_value",
    "agree_flag",
    "computed_critical_nu",
]


class CsvCliView(BaseCliView):
    """CSV output: one row per threshold test, or key/value rows for other reports."""

    def render(self, data: Any) -> str:
        buffer = io.StringIO()
        result = data.get("result") if isinstance(data, dict) else None
        if isinstance(result, list) and result and isinstance(result[0], dict) and "rows" in result[0]:
            self._threshold_rows(buffer, result)
        else:
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["key", "value"])
            for key, value in flatten(data):
                writer.writerow([key, value])
        return buffer.getvalue()

    def _threshold_rows(self, buffer: io.StringIO, records: List[dict]):
        writer = csv.DictWriter(buffer, fieldnames=THRESHOLD_COLUMNS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for record in records:
            for row in record["rows"]:
                writer.writerow({"example": record["example"], "lambda": record["lambda"], **row})
