"""Finding and severity primitives shared by parser, DTS, and validation."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .xmltree import SourceLocation


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Finding:
    """One validation result with a stable code and a source position.

    Messages never contain absolute file paths; any document mentioned is
    referred to by the relative form it was addressed with.
    """

    code: str
    severity: Severity
    message: str
    location: SourceLocation = SourceLocation()
    subject: str | None = None

    def sort_key(self) -> tuple[int, int, str]:
        return (self.location.line, self.location.column, self.code)
