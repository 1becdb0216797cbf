"""Instance generators with known or claimed optimal block counts.

Method 1 pads with zeros, method 2 with (x, -x) pairs, method 3 builds
two-negative instances whose optimum is certified by subset-sum counting,
method 4 negates sums of consecutive runs of positives, and method 5
concatenates copies of an instance.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .core import DebtError, DebtVector
from .evolve import make_rng
from .oracle import count_subset_sums, exact_max_partition


class OptimumKind(str, Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound_claimed_exact"


class GenerationError(DebtError):
    pass


@dataclass(frozen=True)
class GeneratedInstance:
    d: DebtVector
    claimed_optimum: int
    optimum_kind: OptimumKind
    method: Optional[int] = None
    seed: Optional[int] = None
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.d, DebtVector):
            object.__setattr__(self, "d", DebtVector(self.d))
        object.__setattr__(self, "optimum_kind", OptimumKind(self.optimum_kind))
        if len(self.d) and not 1 <= self.claimed_optimum <= len(self.d):
            raise ValueError(f"claimed optimum {self.claimed_optimum} outside [1, {len(self.d)}]")

    @property
    def n(self) -> int:
        return len(self.d)


EMPTY = GeneratedInstance(DebtVector(()), 0, OptimumKind.EXACT)


def labeled(d) -> GeneratedInstance:
    """Wrap ``d`` with its exact optimum from the oracle."""
    return GeneratedInstance(DebtVector(d), exact_max_partition(d).max_blocks, OptimumKind.EXACT)


def gen_method1(base: GeneratedInstance, k: int) -> GeneratedInstance:
    if k < 0:
        raise ValueError("k must be non-negative")
    return replace(
        base,
        d=DebtVector(base.d.values + (0,) * k),
        claimed_optimum=base.claimed_optimum + k,
        method=1,
        parameters={"zeros": k},
    )


def gen_method2(base: Optional[GeneratedInstance], pairs: Sequence[int]) -> GeneratedInstance:
    base = EMPTY if base is None else base
    if any(x <= 0 for x in pairs):
        raise ValueError("pair values must be positive")
    if not pairs:
        return base
    pos = tuple(int(x) for x in pairs)
    if base.n == 0:
        # the {1..k, -1..-k} family used for the hard benchmark cases
        values = pos + tuple(-x for x in pos)
    else:
        values = base.d.values + tuple(v for x in pos for v in (x, -x))
    return replace(
        base,
        d=DebtVector(values),
        claimed_optimum=base.claimed_optimum + len(pos),
        optimum_kind=OptimumKind.LOWER_BOUND,
        method=2,
        parameters={"pairs": list(pos)},
    )


def hard_pairs(n: int) -> GeneratedInstance:
    """{1, ..., n/2, -1, ..., -n/2}: a unique optimum of n/2 pair blocks."""
    if n < 2 or n % 2:
        raise ValueError("n must be an even number >= 2")
    return gen_method2(None, range(1, n // 2 + 1))


def method3_instance(positives: Sequence[int], first_group: Sequence[int], cap: int = 2) -> Optional[DebtVector]:
    """Positives followed by the two negated group sums, or None if the split is not unique.

    ``first_group`` holds positions into ``positives``. Uniqueness means no
    other subset of the positives reaches the first group's sum.
    """
    positives = [int(v) for v in positives]
    target = sum(positives[i] for i in first_group)
    rest = sum(positives) - target
    if count_subset_sums(positives, target, cap=cap) != 1:
        return None
    return DebtVector(positives + [-target, -rest])


def gen_method3(count_positive: int, value_range: tuple[int, int] = (1, 1000), rng_seed: int = 0,
                first_group_size: Optional[int] = None, max_attempts: int = 1000) -> GeneratedInstance:
    """Two negatives, optimum exactly 2, with a unique optimal grouping of the positives."""
    if count_positive < 2:
        raise ValueError("count_positive must be at least 2")
    size = count_positive // 2 if first_group_size is None else first_group_size
    if not 1 <= size < count_positive:
        raise ValueError("first_group_size must be in [1, count_positive)")
    lo, hi = value_range
    if lo < 1:
        raise ValueError("values must be positive")
    rng = make_rng(rng_seed)
    for attempt in range(max_attempts):
        positives = rng.integers(lo, hi + 1, size=count_positive)
        group = np.sort(rng.choice(count_positive, size=size, replace=False))
        d = method3_instance(positives, group)
        if d is not None:
            return GeneratedInstance(d, 2, OptimumKind.EXACT, 3, rng_seed, {
                "count_positive": count_positive, "value_range": [lo, hi],
                "first_group": [int(i) for i in group], "attempts": attempt + 1,
            })
    raise GenerationError(f"no unique split found in {max_attempts} attempts")


def method4_instance(positives: Sequence[int], cuts: Sequence[int]) -> DebtVector:
    """Append minus the sum of each run positives[r_{i-1}:r_i]; the last cut must be len(positives)."""
    positives = [int(v) for v in positives]
    if list(cuts) != sorted(set(cuts)) or not cuts or cuts[0] < 1 or cuts[-1] != len(positives):
        raise ValueError("cuts must be strictly increasing, start >= 1 and end at len(positives)")
    prefix = np.concatenate(([0], np.cumsum(positives)))
    bounds = [0, *cuts]
    negatives = [-int(prefix[b] - prefix[a]) for a, b in zip(bounds[:-1], bounds[1:])]
    return DebtVector(positives + negatives)


def gen_method4(n: int, l: int, value_range: tuple[int, int] = (1, 1000), rng_seed: int = 0) -> GeneratedInstance:
    """``n - l`` positives split into ``l`` consecutive runs, each balanced by one negative.

    The runs must cover every positive for the vector to sum to zero, so the
    last cut is pinned to ``n - l`` and the other ``l - 1`` are drawn.
    """
    if not 1 <= l <= n // 2:
        raise ValueError("need 1 <= l <= n // 2")
    lo, hi = value_range
    if lo < 1:
        raise ValueError("values must be positive")
    rng = make_rng(rng_seed)
    m = n - l
    positives = rng.integers(lo, hi + 1, size=m)
    inner = np.sort(rng.choice(np.arange(1, m), size=l - 1, replace=False)) if l > 1 else np.array([], dtype=int)
    cuts = [int(c) for c in inner] + [m]
    d = method4_instance(positives, cuts)
    return GeneratedInstance(d, l, OptimumKind.LOWER_BOUND, 4, rng_seed, {
        "n": n, "l": l, "value_range": [lo, hi], "cuts": cuts,
    })


def gen_method5(base: GeneratedInstance, copies: int) -> GeneratedInstance:
    if copies < 1:
        raise ValueError("copies must be at least 1")
    if copies == 1:
        return base
    return replace(
        base,
        d=DebtVector(base.d.values * copies),
        claimed_optimum=base.claimed_optimum * copies,
        optimum_kind=OptimumKind.LOWER_BOUND,
        method=5,
        parameters={"copies": copies, "base_method": base.method, "base_parameters": base.parameters},
    )
