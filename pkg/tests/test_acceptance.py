"""Acceptance criteria; each test prints one PASS/FAIL line in the terminal summary."""
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, SAMPLE_LEDGER
from debtclear.core import DebtVector, compute_debt_vector, settle_partition, verify_clearing
from debtclear.evolve import (
    GAConfig,
    evolve,
    fitness_value,
    is_permutation,
    make_rng,
    mut1,
    mut2,
    mut3,
    random_search,
    recomb1,
    recomb2,
)
from debtclear.experiment import ExperimentSpec, instance_meta, run_experiment
from debtclear.formats import parse_text, write_instance
from debtclear.generate import (
    GenerationError,
    OptimumKind,
    gen_method1,
    gen_method2,
    gen_method3,
    gen_method4,
    gen_method5,
    hard_pairs,
    labeled,
)
from debtclear.oracle import exact_max_partition


def report(key: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[key] = f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}"


def test_c1_sample_end_to_end():
    start = time.perf_counter()
    ledger, _ = parse_text(SAMPLE_LEDGER)
    d = compute_debt_vector(ledger)
    res = exact_max_partition(d)
    plan = settle_partition(d, res.witness)
    elapsed = time.perf_counter() - start
    ok = (d == (3, 0, 4, -7, 0) and res.max_blocks == 3 and len(plan) == 2
          and verify_clearing(d, plan) and elapsed < 1.0)
    report(1, ok, f"D={tuple(d)} max={res.max_blocks} transfers={len(plan)} in {elapsed:.3f}s")
    assert ok


def test_c2_operator_examples():
    five = (-3, 2, 1, -5, 5)
    eleven = (-2, 2, 3, 4, -7, 1, -1, 6, -3, 2, -5)

    def vals(d, genes):
        return [d[g] for g in genes]

    r1a, r1b = recomb1([0, 1, 2, 3, 4], [3, 1, 2, 0, 4], k=2)
    r2a, r2b = recomb2(five, [0, 1, 2, 3, 4], [1, 2, 4, 3, 0])
    checks = {
        "recomb1": (vals(five, r1a), vals(five, r1b)) == ([-3, 2, -5, 1, 5], [-5, 2, -3, 1, 5]),
        "recomb2": (vals(five, r2a), vals(five, r2b)) == ([-3, 2, 1, -5, 5], [-3, 2, 1, 5, -5]),
        "mut1": vals(five, mut1(range(5), 1, 4)) == [-3, 5, -5, 1, 2],
        "mut2": vals(eleven, mut2(eleven, range(11), 0, 3)) == [6, -3, 2, -5, 1, -1, 3, 4, -7, -2, 2],
        "mut3": vals(eleven, mut3(eleven, range(11), 3, 0, 3)) == [-2, 2, 3, 4, -7, 1, -1, -5, 2, -3, 6],
    }
    ok = all(checks.values())
    report(2, ok, ", ".join(f"{k} {'ok' if v else 'MISMATCH'}" for k, v in checks.items()))
    assert ok


@pytest.fixture(scope="module")
def pairs100_runs():
    d = hard_pairs(100).d
    start = time.perf_counter()
    bests = [evolve(d, GAConfig(generations=5000, rng_seed=s)).best_fitness for s in range(10)]
    return d, bests, time.perf_counter() - start


def test_c3_difficult_case_n100(pairs100_runs):
    _, bests, elapsed = pairs100_runs
    best, avg = max(bests), sum(bests) / len(bests)
    ok = best >= 48 and avg >= 45 and elapsed <= 900
    report(3, ok, f"{{1..50,-1..-50}} best-of-10={best} (>=48) avg={avg:.1f} (>=45) bests={bests} "
                  f"time={elapsed:.0f}s")
    assert ok


def test_c4_ga_beats_random_search(pairs100_runs):
    d, bests, _ = pairs100_runs
    ga_best = max(bests)
    rs = [random_search(d, 100_000, rng_seed=s).best_fitness for s in range(5)]
    ok = all(v < ga_best for v in rs)
    report(4, ok, f"random search (1e5 evals, 5 seeds) {rs} vs GA best-of-10 {ga_best}")
    assert ok


def small_instances(count: int, seed: int):
    """Mixed-generator instances with n <= 12."""
    rng = make_rng(seed)
    out = []
    while len(out) < count:
        kind = len(out) % 5
        s = int(rng.integers(2 ** 31))
        if kind == 0:
            n = int(rng.integers(2, 13))
            head = rng.integers(-9, 10, size=n - 1)
            out.append(DebtVector(list(head) + [-int(head.sum())]))
        elif kind == 1:
            n = int(rng.integers(4, 13))
            out.append(gen_method4(n, int(rng.integers(1, n // 2 + 1)), (1, 20), s).d)
        elif kind == 2:
            try:
                out.append(gen_method3(int(rng.integers(2, 11)), (1, 60), s, max_attempts=20).d)
            except GenerationError:
                continue
        elif kind == 3:
            k = int(rng.integers(1, 7))
            out.append(gen_method2(None, [int(x) for x in rng.integers(1, 15, size=k)]).d)
        else:
            base = gen_method4(5, int(rng.integers(1, 3)), (1, 9), s)
            out.append(gen_method1(gen_method5(base, 2), int(rng.integers(0, 3))).d)
    return out


def test_c5_oracle_equivalence():
    start = time.perf_counter()
    equal = exceeded = 0
    for d in small_instances(200, seed=2024):
        opt = exact_max_partition(d).max_blocks
        got = evolve(d, GAConfig(generations=2000, rng_seed=0, target_fitness=opt)).best_fitness
        equal += got == opt
        exceeded += got > opt
    elapsed = time.perf_counter() - start
    ok = equal >= 190 and exceeded == 0 and elapsed <= 300
    report(5, ok, f"GA == oracle on {equal}/200 (>=190), above oracle {exceeded}, time={elapsed:.0f}s")
    assert ok


def test_c6_operator_monotonicity():
    rng = make_rng(6)
    trials = 100_000
    violations = {"mut2 fitness": 0, "mut3 fitness": 0, "recomb2 fitness": 0, "permutation": 0}
    for _ in range(trials):
        n = int(rng.integers(2, 31))
        head = rng.integers(-5, 6, size=n - 1)
        d = np.append(head, -head.sum())
        a, b = rng.permutation(n), rng.permutation(n)
        fa, fb = fitness_value(d, a), fitness_value(d, b)
        m2, m3 = mut2(d, a, rng=rng), mut3(d, a, rng=rng)
        c1, c2 = recomb2(d, a, b)
        r1, r2 = recomb1(a, b, rng=rng)
        m1 = mut1(a, rng=rng)
        violations["mut2 fitness"] += fitness_value(d, m2) != fa
        violations["mut3 fitness"] += fitness_value(d, m3) < fa
        violations["recomb2 fitness"] += fitness_value(d, c1) < fa or fitness_value(d, c2) < fb
        violations["permutation"] += not all(is_permutation(c, n) for c in (m1, m2, m3, c1, c2, r1, r2))
    ok = not any(violations.values())
    report(6, ok, f"{trials} applications per operator, violations {violations}")
    assert ok


def generated_instances(method: int, count: int):
    rng = make_rng(700 + method)
    out = []
    while len(out) < count:
        s = int(rng.integers(2 ** 31))
        head = rng.integers(-8, 9, size=int(rng.integers(1, 7)))
        base = labeled(DebtVector(list(head) + [-int(head.sum())]))
        if method == 1:
            out.append(gen_method1(base, int(rng.integers(0, 5))))
        elif method == 2:
            out.append(gen_method2(base, [int(x) for x in rng.integers(1, 20, size=int(rng.integers(1, 5)))]))
        elif method == 3:
            try:
                out.append(gen_method3(int(rng.integers(2, 15)), (1, 500), s, max_attempts=50))
            except GenerationError:
                continue
        elif method == 4:
            n = int(rng.integers(2, 21))
            out.append(gen_method4(n, int(rng.integers(1, n // 2 + 1)), (1, 40), s))
        else:
            n = int(rng.integers(2, 11))
            small = gen_method4(n, int(rng.integers(1, n // 2 + 1)), (1, 30), s)
            out.append(gen_method5(small, int(rng.integers(1, 20 // n + 1))))
    return out


def test_c7_generator_certification():
    violations = {}
    for method in range(1, 6):
        bad = 0
        for inst in generated_instances(method, 100):
            opt = exact_max_partition(inst.d).max_blocks
            if method in (1, 3):
                assert inst.optimum_kind is OptimumKind.EXACT
                bad += sum(1 for v in inst.d if v) > 16 or opt != inst.claimed_optimum
            else:
                bad += opt < inst.claimed_optimum
        violations[method] = bad
    ok = not any(violations.values())
    report(7, ok, f"100 instances per method, violations by method {violations}")
    assert ok


def oracle_exact_method4(n, l, value_range, seed):
    """First seed from ``seed`` on whose method-4 instance has optimum exactly ``l``."""
    while True:
        inst = gen_method4(n, l, value_range, seed)
        if exact_max_partition(inst.d).max_blocks == l:
            return labeled(inst.d)
        seed += 1


@pytest.mark.slow
def test_c8_convergence_n1000():
    # 20 values split into exactly three zero-sum groups, x5 for n = 100, x10 for n = 1000
    base = gen_method5(oracle_exact_method4(20, 3, (1, 100), 0), 5)
    inst = gen_method5(base, 10)
    start = time.perf_counter()
    res = evolve(inst.d, GAConfig(generations=50_000, rng_seed=0))
    elapsed = time.perf_counter() - start
    best = [h.best_fitness for h in res.history]
    pct = 100.0 * best[-1] / inst.claimed_optimum
    checkpoints = {g: best[g] for g in (0, 1000, 5000, 10_000, 25_000, 50_000)}
    monotone = all(x <= y for x, y in zip(best, best[1:]))
    ok = inst.n == 1000 and monotone and pct >= 80.0 and elapsed <= 5400
    report(8, ok, f"n={inst.n} claimed={inst.claimed_optimum} final={best[-1]} ({pct:.1f}%, >=80%) "
                  f"non-decreasing={monotone} checkpoints={checkpoints} time={elapsed:.0f}s")
    assert ok


def test_c9_determinism(tmp_path):
    inst = gen_method5(gen_method4(20, 4, (1, 50), 3), 3)
    path = tmp_path / "inst.txt"
    write_instance(inst.d, path, instance_meta(inst))
    outputs = []
    for k in range(2):
        spec = ExperimentSpec([str(path)], ga=GAConfig(generations=300, rng_seed=17), repetitions=3,
                              output_dir=str(tmp_path / f"run{k}"))
        run_experiment(spec, log=lambda _: None)
        outputs.append({p.name: p.read_bytes() for p in (tmp_path / f"run{k}").glob("*_run*.csv")})
    ok = len(outputs[0]) == 3 and outputs[0] == outputs[1]
    report(9, ok, f"{len(outputs[0])} history CSVs byte-identical across two runs: {outputs[0] == outputs[1]}")
    assert ok
