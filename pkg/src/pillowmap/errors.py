"""Shared exception types and default resource budgets."""

# Enumeration of folded cells stops once 2 * degree**n exceeds this.
CELL_BUDGET = 2**22

# Planar searches stop after visiting this many grid cells.
FRONTIER_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    """A computation hit its configured cell or frontier budget."""


class CapExceededError(RuntimeError):
    """A level scan reached its cap without resolving the query."""
