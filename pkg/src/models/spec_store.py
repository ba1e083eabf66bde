import json
import os

from src.core.errors import InputError
from src.models.domain_spec import DomainSpec
from src.models.vtuple import VTuple


class SpecStore:
    """Reads domain and tuple specifications from JSON files and writes reports."""

    def __init__(self, base_dir: str = "."):
        """Initialize the store relative to ``base_dir``."""
        self.base_dir = base_dir

    def _path(self, filename: str) -> str:
        return filename if os.path.isabs(filename) else os.path.join(self.base_dir, filename)

    def load_json(self, filename: str):
        """Parse a JSON file, reporting syntax errors with line and column."""
        try:
            with open(self._path(filename), "r") as f:
                return json.load(f)
        except FileNotFoundError:
            raise InputError(f"no such file: {filename}")
        except json.JSONDecodeError as e:
            raise InputError(f"malformed JSON in {filename}: {e.msg}", line=e.lineno, column=e.colno)

    def load_domain(self, filename: str) -> DomainSpec:
        """Load a DomainSpec file."""
        return DomainSpec.from_dict(self.load_json(filename))

    def load_vtuple(self, filename: str) -> VTuple:
        """Load a VTuple file."""
        return VTuple.from_dict(self.load_json(filename))

    def save_text(self, filename: str, text: str):
        """Write a rendered report."""
        with open(self._path(filename), "w") as f:
            f.write(text)
