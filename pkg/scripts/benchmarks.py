"""Benchmark instances at n = 100 and n = 1000, built with the generators."""
from debtclear.generate import (
    GeneratedInstance,
    gen_method3,
    gen_method4,
    gen_method5,
    hard_pairs,
    labeled,
)
from debtclear.oracle import exact_max_partition

VALUE_RANGE = (1, 100)


def certified_method4(n: int, l: int, seed: int = 0, value_range=VALUE_RANGE) -> GeneratedInstance:
    """First method-4 instance from ``seed`` on whose optimum is exactly ``l``."""
    while True:
        inst = gen_method4(n, l, value_range, seed)
        if exact_max_partition(inst.d).max_blocks == l:
            out = labeled(inst.d)
            return GeneratedInstance(out.d, l, out.optimum_kind, 4, seed, inst.parameters)
        seed += 1


def bench100(name: str) -> GeneratedInstance:
    if name == "a":
        # five blocks in 20 values, five copies: claimed optimum 25
        return gen_method5(certified_method4(20, 5), 5)
    if name == "b":
        # two negatives in 50 values, two copies: claimed optimum 4
        return gen_method5(gen_method3(48, VALUE_RANGE, 0, first_group_size=2), 2)
    if name == "c":
        # three blocks in 20 values, five copies: claimed optimum 15
        return gen_method5(certified_method4(20, 3), 5)
    raise ValueError(f"unknown case {name!r}")


def bench1000(name: str) -> GeneratedInstance:
    return gen_method5(bench100(name), 10)


CASES = {
    **{f"bench100{k}": (lambda k=k: bench100(k)) for k in "abc"},
    **{f"bench1000{k}": (lambda k=k: bench1000(k)) for k in "abc"},
    **{f"pairs{n}": (lambda n=n: hard_pairs(n)) for n in range(100, 1001, 100)},
}
