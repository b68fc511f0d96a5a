"""Search budgets, overridable through the ``ARBOR_BUDGET`` environment
variable (number of backtracking nodes)."""

import os

DEFAULT_BUDGET = 200_000


def default_budget() -> int:
    raw = os.environ.get("ARBOR_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            return DEFAULT_BUDGET
        if value > 0:
            return value
    return DEFAULT_BUDGET
