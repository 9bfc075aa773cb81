"""Resource limits and the exceptions raised when they are hit."""

from __future__ import annotations

import os

DEFAULT_MAX_N = 12


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured resource budget."""


class InstanceTooLarge(BudgetExceeded):
    """The instance has more vertices than the configured cap allows."""


def max_vertices() -> int:
    """Vertex cap, overridable through ``FLAGVEC_MAX_N``."""
    raw = os.environ.get("FLAGVEC_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"FLAGVEC_MAX_N must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("FLAGVEC_MAX_N must be positive")
    return value


def check_vertices(n: int, cap: int | None = None) -> None:
    cap = max_vertices() if cap is None else cap
    if n > cap:
        raise InstanceTooLarge(f"instance too large: {n} vertices exceeds the cap of {cap}")
