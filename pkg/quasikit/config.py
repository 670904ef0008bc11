"""
Runtime configuration for quasikit.

Constants are module level (UPPER_SNAKE); the few environment switches are read
once at import time so every module sees the same values.
"""

import os
import sys
from typing import Optional, TextIO

SCHEMA_VERSION = "1.0"

# Fresh suspension apexes are named from these stems ("apex+", "apex+2", ...)
APEX_STEMS = ("apex+", "apex-")

# Seeded corpus of random ramified complexes
RANDOM_VERTICES = 9
RANDOM_PROBABILITY = 0.2
RANDOM_DIMENSION = 3
RANDOM_ATTEMPTS_PER_CORE = 500

# Canonical forms are exact at every size, but the search is only cheap up to here
CANONICAL_VERTEX_LIMIT = 12

# Files picked up by `analyze --batch`
BATCH_SUFFIXES = (".fl", ".txt", ".json")

LOG_LEVEL = os.environ.get("QUASIKIT_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

NO_COLOR = bool(os.environ.get("NO_COLOR") or os.environ.get("QUASIKIT_NO_COLOR"))


def use_color(stream: Optional[TextIO] = None) -> bool:
    """Whether ANSI colour should be written to the given stream."""
    if NO_COLOR:
        return False
    stream = stream if stream is not None else sys.stdout
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())
