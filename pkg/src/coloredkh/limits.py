"""Crossing budgets guarding the exponential state spaces.

Defaults can be overridden with ``COLOREDKH_HOMOLOGY_BUDGET`` and
``COLOREDKH_BRACKET_BUDGET``.
"""
from __future__ import annotations

import os

from .errors import BudgetExceeded, ValidationError

DEFAULT_HOMOLOGY_BUDGET = 14
DEFAULT_BRACKET_BUDGET = 22


def _env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValidationError(f"{name} must be nonnegative")
    return value


def homology_budget() -> int:
    return _env("COLOREDKH_HOMOLOGY_BUDGET", DEFAULT_HOMOLOGY_BUDGET)


def bracket_budget() -> int:
    return _env("COLOREDKH_BRACKET_BUDGET", DEFAULT_BRACKET_BUDGET)


def check_budget(n_crossings: int, kind: str = "homology", budget: int | None = None) -> None:
    if budget is None:
        budget = homology_budget() if kind == "homology" else bracket_budget()
    if n_crossings > budget:
        raise BudgetExceeded(
            f"diagram has {n_crossings} crossings, over the {kind} budget of {budget}"
        )
