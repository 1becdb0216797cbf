"""Debt clearing: fewest transfers that settle a group's debts."""
from .core import (
    BorrowingLedger,
    DebtVector,
    Partition,
    TransactionPlan,
    Transfer,
    compute_debt_vector,
    greedy_settle,
    settle_partition,
    transaction_count,
    verify_clearing,
)
from .evolve import GAConfig, decode, evolve, fitness, random_search
from .oracle import count_subset_sums, exact_max_partition

__all__ = [
    "BorrowingLedger",
    "DebtVector",
    "GAConfig",
    "Partition",
    "TransactionPlan",
    "Transfer",
    "compute_debt_vector",
    "count_subset_sums",
    "decode",
    "evolve",
    "exact_max_partition",
    "fitness",
    "greedy_settle",
    "random_search",
    "settle_partition",
    "transaction_count",
    "verify_clearing",
]
