"""Exception hierarchy shared by every package.

The CLI maps these onto exit codes: configuration problems exit 1,
data problems exit 2.
"""

from __future__ import annotations


class ConfigurationError(ValueError):
    """Invalid parameters or data that cannot support the requested operation."""


class DataError(Exception):
    """Base class for problems with input files or their contents."""


class DatasetIOError(DataError):
    """A required file or directory is missing or unreadable."""


class ConsistencyError(DataError):
    """Inputs disagree with each other (e.g. manifest lists an absent file)."""


class DataParseError(DataError):
    """A cell or line could not be parsed."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None) -> None:
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")
        self.row = row
        self.column = column


class ArtifactError(DataError):
    """A model artifact file is unreadable or has an unexpected header."""
