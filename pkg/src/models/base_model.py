import json
from abc import ABC, abstractmethod
from typing import Optional

from src.core.errors import InputError


class BaseModel(ABC):
    """A model that round-trips through plain JSON values (complex numbers as [re, im])."""

    @abstractmethod
    def to_dict(self) -> dict:
        pass

    @classmethod
    @abstractmethod
    def from_dict(cls, data: dict) -> "BaseModel":
        """Build from decoded JSON, raising InputError on missing or malformed fields."""
        pass

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "BaseModel":
        """Decode ``text``; syntax errors become InputError with line and column."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"malformed JSON for {cls.__name__}: {e.msg}", line=e.lineno, column=e.colno)
        return cls.from_dict(data)
