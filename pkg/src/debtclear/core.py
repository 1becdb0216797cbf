"""Problem domain: borrowing ledgers, debt vectors, partitions and settlement.

Entities are 0-indexed in every in-memory structure. File formats (see
:mod:`debtclear.formats`) translate to and from 1-indexed entities.

A positive D value marks a net payer, a negative one a net receiver.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

# Sum of |D| over an instance is kept below this, so every partial sum of any
# permutation fits a signed 64-bit integer with room to spare.
MAGNITUDE_BOUND = 2**62
MAX_AMOUNT = 2**40
MAX_ENTITIES = 2**20


class DebtError(Exception):
    """Base class for domain errors raised by this package."""


class MagnitudeError(DebtError, OverflowError):
    pass


class InvalidInstanceError(DebtError, ValueError):
    pass


class InvalidPartitionError(DebtError, ValueError):
    pass


@dataclass(frozen=True)
class Borrowing:
    borrower: int
    lender: int
    amount: int


@dataclass(frozen=True)
class BorrowingLedger:
    """``n`` entities and the borrowings made among them (the borrowing graph)."""

    n: int
    records: tuple[Borrowing, ...] = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ENTITIES:
            raise InvalidInstanceError(f"entity count {self.n} outside [1, {MAX_ENTITIES}]")
        records = tuple(r if isinstance(r, Borrowing) else Borrowing(*r) for r in self.records)
        object.__setattr__(self, "records", records)
        for r in records:
            if not (0 <= r.borrower < self.n and 0 <= r.lender < self.n):
                raise InvalidInstanceError(f"entity index out of range in {r}")
            if r.borrower == r.lender:
                raise InvalidInstanceError(f"borrower equals lender in {r}")
            if r.amount <= 0:
                raise InvalidInstanceError(f"non-positive amount in {r}")
            if r.amount > MAX_AMOUNT:
                raise MagnitudeError(f"amount {r.amount} exceeds {MAX_AMOUNT}")

    @property
    def m(self) -> int:
        return len(self.records)


class DebtVector(Sequence[int]):
    """Immutable vector of D values; always sums to zero."""

    __slots__ = ("_values", "_array")

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        if len(vals) > MAX_ENTITIES:
            raise InvalidInstanceError(f"more than {MAX_ENTITIES} entities")
        if sum(abs(v) for v in vals) >= MAGNITUDE_BOUND:
            raise MagnitudeError("debt magnitudes exceed the 64-bit safety bound")
        if sum(vals) != 0:
            raise InvalidInstanceError(f"D values sum to {sum(vals)}, expected 0")
        self._values = vals
        arr = np.array(vals, dtype=np.int64)
        arr.flags.writeable = False
        self._array = arr

    @property
    def values(self) -> tuple[int, ...]:
        return self._values

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 view, used by the vectorized hot paths."""
        return self._array

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, i):
        return self._values[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, DebtVector):
            return self._values == other._values
        if isinstance(other, (tuple, list)):
            return self._values == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._values)

    def __repr__(self) -> str:
        return f"DebtVector({list(self._values)})"


def as_debt_vector(d) -> DebtVector:
    return d if isinstance(d, DebtVector) else DebtVector(d)


@dataclass(frozen=True)
class Partition:
    """Ordered zero-sum blocks of entity indices."""

    blocks: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(b) for b in self.blocks]

    def validate(self, d: DebtVector) -> None:
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise InvalidPartitionError("empty block")
            if seen.intersection(block):
                raise InvalidPartitionError(f"block {block} overlaps an earlier block")
            seen.update(block)
            total = sum(d[i] for i in block)
            if total != 0:
                raise InvalidPartitionError(f"block {block} sums to {total}")
        if seen != set(range(len(d))):
            raise InvalidPartitionError("blocks do not cover every entity")


@dataclass(frozen=True)
class Transfer:
    sender: int
    receiver: int
    amount: int

    def __post_init__(self):
        if self.amount <= 0:
            raise InvalidInstanceError(f"non-positive transfer amount in {self}")
        if self.sender == self.receiver:
            raise InvalidInstanceError(f"sender equals receiver in {self}")


@dataclass(frozen=True)
class TransactionPlan:
    transfers: tuple[Transfer, ...] = ()

    def __len__(self) -> int:
        return len(self.transfers)

    def __iter__(self):
        return iter(self.transfers)


def compute_debt_vector(ledger: BorrowingLedger) -> DebtVector:
    """Net balance per entity: amounts borrowed (still to repay) minus amounts lent."""
    d = [0] * ledger.n
    for r in ledger.records:
        d[r.borrower] += r.amount
        d[r.lender] -= r.amount
    # DebtVector re-checks the bound on the exact Python-int totals
    return DebtVector(d)


def plan_balances(n: int, plan: TransactionPlan) -> list[int]:
    out = [0] * n
    for t in plan:
        out[t.sender] += t.amount
        out[t.receiver] -= t.amount
    return out


def verify_clearing(d, plan: TransactionPlan) -> bool:
    """True iff every entity's outgoing minus incoming over ``plan`` equals its D value."""
    n = len(d)
    if any(not (0 <= t.sender < n and 0 <= t.receiver < n) for t in plan):
        return False
    return plan_balances(n, plan) == list(d)


def _greedy_transfers(d: Sequence[int], entities: Sequence[int]) -> list[Transfer]:
    # lowest-index payer pays lowest-index receiver until both lists drain
    payers = sorted(i for i in entities if d[i] > 0)
    receivers = sorted(i for i in entities if d[i] < 0)
    left = {i: d[i] for i in entities}
    out = []
    pi = ri = 0
    while pi < len(payers) and ri < len(receivers):
        i, j = payers[pi], receivers[ri]
        amount = min(left[i], -left[j])
        out.append(Transfer(i, j, amount))
        left[i] -= amount
        left[j] += amount
        if left[i] == 0:
            pi += 1
        if left[j] == 0:
            ri += 1
    if pi < len(payers) or ri < len(receivers):
        raise InvalidPartitionError("entities do not sum to zero")
    return out


def greedy_settle(d) -> TransactionPlan:
    """Clear ``d`` with at most (nonzero entries - 1) transfers."""
    d = as_debt_vector(d)
    return TransactionPlan(tuple(_greedy_transfers(d, range(len(d)))))


def settle_partition(d, p: Partition) -> TransactionPlan:
    """Settle each zero-sum block on its own; uses n - len(p) transfers at most."""
    d = as_debt_vector(d)
    p.validate(d)
    transfers: list[Transfer] = []
    for block in p.blocks:
        transfers.extend(_greedy_transfers(d, block))
    return TransactionPlan(tuple(transfers))


def transaction_count(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise ValueError(f"block count {k} outside [1, {n}]")
    return n - k
