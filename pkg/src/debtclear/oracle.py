"""Exact maximal zero-sum partition for small instances, and subset-sum counting.

The partition solver runs a vectorized DP over subsets of the nonzero
entries. ``best[S]`` is the largest number of zero prefix sums over all
orderings of ``S``, which is the same as the largest number of zero-sum
blocks ``S`` splits into when ``S`` itself sums to zero:

    best[S] = max_{i in S} best[S - {i}] + [sum(S) == 0]

That is O(2^k * k) for k nonzero entries instead of the O(3^k) submask walk.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DebtError, Partition, as_debt_vector

HARD_LIMIT = 20
PRACTICAL_LIMIT = 18


class InstanceTooLargeError(DebtError):
    pass


@dataclass(frozen=True)
class OracleResult:
    max_blocks: int
    witness: Partition


def _subset_sums(values: np.ndarray) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for v in values:
        sums = np.concatenate([sums, sums + v])
    return sums


def _popcounts(k: int) -> np.ndarray:
    pc = np.zeros(1, dtype=np.int8)
    for _ in range(k):
        pc = np.concatenate([pc, pc + 1])
    return pc


def _best_table(values: np.ndarray) -> np.ndarray:
    k = len(values)
    zero = (_subset_sums(values) == 0).astype(np.int16)
    best = np.zeros(1 << k, dtype=np.int16)
    pc = _popcounts(k)
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(k + 2))
    for level in range(1, k + 1):
        masks = order[bounds[level]:bounds[level + 1]]
        acc = np.zeros(len(masks), dtype=np.int16)
        for b in range(k):
            bit = 1 << b
            has = (masks & bit) != 0
            sub = masks[has] ^ bit
            acc[has] = np.maximum(acc[has], best[sub])
        best[masks] = acc + zero[masks]
    return best


def exact_max_partition(d, limit: int = HARD_LIMIT) -> OracleResult:
    """Maximum number of disjoint zero-sum blocks covering all entities of ``d``.

    Zero entries are forced singletons and are stripped before the DP.
    Raises InstanceTooLargeError when more than ``limit`` entries are nonzero.
    """
    d = as_debt_vector(d)
    zeros = [i for i, v in enumerate(d) if v == 0]
    nonzero = [i for i, v in enumerate(d) if v != 0]
    k = len(nonzero)
    if k > min(limit, HARD_LIMIT):
        raise InstanceTooLargeError(f"{k} nonzero entries exceed the oracle limit of {min(limit, HARD_LIMIT)}")
    blocks: list[tuple[int, ...]] = [(i,) for i in zeros]
    if k:
        values = d.array[nonzero]
        best = _best_table(values)
        sums = _subset_sums(values)
        # peel elements off the full mask; reversed, they form an optimal ordering
        mask = (1 << k) - 1
        removed = []
        while mask:
            gain = int(sums[mask] == 0)
            for b in range(k):
                bit = 1 << b
                if mask & bit and best[mask ^ bit] + gain == best[mask]:
                    removed.append(b)
                    mask ^= bit
                    break
        ordering = removed[::-1]
        current: list[int] = []
        running = 0
        for b in ordering:
            current.append(nonzero[b])
            running += int(values[b])
            if running == 0:
                blocks.append(tuple(current))
                current = []
    return OracleResult(len(blocks), Partition(tuple(blocks)))


def count_subset_sums(values: Sequence[int], target: int, cap: int | None = None) -> int:
    """Number of subsets of ``values`` (by position) whose sum is ``target``.

    With ``cap`` set, counts saturate at ``cap``; handy when only uniqueness
    matters and the exact count would be huge.
    """
    if target < 0:
        return 0
    if any(v <= 0 for v in values):
        raise ValueError("values must be positive")
    if cap is None:
        counts = np.zeros(target + 1, dtype=object)
        counts[:] = 0
    else:
        counts = np.zeros(target + 1, dtype=np.int64)
    counts[0] = 1
    for v in values:
        if v > target:
            continue
        shifted = counts[:-v].copy()
        counts[v:] += shifted
        if cap is not None:
            np.minimum(counts, cap, out=counts)
    return int(counts[target])

