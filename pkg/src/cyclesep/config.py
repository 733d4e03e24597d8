"""Enumeration budgets and defaults."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**6
DEFAULT_MAX_LEN = 12


def budget(override: int | None = None) -> int:
    """Cycle/path count cap: explicit argument, else ``CYCLESEP_BUDGET``, else 10**6."""
    if override is not None:
        return int(override)
    env = os.environ.get("CYCLESEP_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET
