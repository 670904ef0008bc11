"""
Error types.

Every input problem is a ValueError subclass, so callers that only know about
ValueError (the CLI, batch runners) can still report it as a client error.
"""

from typing import Optional


class TopologyError(ValueError):
    """A simplex, vertex or subcomplex that does not fit the complex it is used with."""


class FacetParseError(TopologyError):
    """A facet-list document that cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
