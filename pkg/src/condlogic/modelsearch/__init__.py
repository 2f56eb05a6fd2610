"""Backtracking countermodel search over small selection frames."""

from .search import (
    BudgetExceeded, Exhausted, Found, SearchOutcome, SearchSpec, Verification,
    enumerate_countermodels, find_countermodel, verify_countermodel,
)

__all__ = [
    "SearchSpec", "SearchOutcome", "Found", "Exhausted", "BudgetExceeded", "Verification",
    "find_countermodel", "verify_countermodel", "enumerate_countermodels",
]
