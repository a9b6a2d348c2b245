"""Work budgets for the enumeration-heavy operations.

All enumerations (maximal independent sets, set-cover search, guess-family
materialization, distribution grids) charge their work against a meter so a
hostile input fails with a resource error instead of hanging.  The default
budget is 2**20 units of search work; the ZEROLEAK_BUDGET environment
variable overrides it.  The automorphism search has a separate hard vertex
cap that is not environment-tunable.
"""

from __future__ import annotations

import os

from .errors import DomainError, ResourceBudgetError

DEFAULT_ENUMERATION_BUDGET = 1 << 20

# Hard cap for the brute-force automorphism search; permutation backtracking
# beyond this is out of scope regardless of the enumeration budget.
AUTOMORPHISM_VERTEX_CAP = 10

_ENV_VAR = "ZEROLEAK_BUDGET"


def enumeration_budget() -> int:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(
            "bad_budget_env",
            f"{_ENV_VAR} must be a positive integer, got {raw!r}",
            {"value": raw},
        )
    if value <= 0:
        raise DomainError(
            "bad_budget_env",
            f"{_ENV_VAR} must be a positive integer, got {raw!r}",
            {"value": raw},
        )
    return value


class WorkMeter:
    """Counts abstract work units and raises once the budget is exhausted."""

    def __init__(self, name: str, limit: int | None = None):
        self.name = name
        self.limit = enumeration_budget() if limit is None else limit
        self.spent = 0

    def spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise ResourceBudgetError(self.name, self.limit)

    def check_size(self, size: int, what: str) -> None:
        # One-shot guard for enumerations whose size is known up front.
        if size > self.limit:
            raise ResourceBudgetError(
                self.name,
                self.limit,
                f"{what} needs {size} units, over the {self.name} budget of {self.limit}",
            )
