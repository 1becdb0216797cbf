"""Genetic algorithm over permutation chromosomes, plus a random-search baseline.

A chromosome is a permutation of entity indices (0-based numpy int array).
Reading the D values in gene order, every zero running sum closes a block,
so the fitness of a chromosome is the number of zero-sum blocks it decodes to.

Operator positions are 0-based and inclusive: ``mut1(c, 1, 4)`` reverses
``c[1:5]``.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import _kernels as _k
from .core import DebtVector, Partition

Chromosome = np.ndarray


class Recombination(str, Enum):
    RECOMB1 = "recomb1"
    RECOMB2 = "recomb2"


class Mutation(str, Enum):
    MUT1 = "mut1"
    MUT2 = "mut2"
    MUT3 = "mut3"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _values(d) -> np.ndarray:
    if isinstance(d, DebtVector):
        return d.array
    return np.asarray(d, dtype=np.int64)


def is_permutation(genes, n: Optional[int] = None) -> bool:
    genes = np.asarray(genes)
    n = len(genes) if n is None else n
    if genes.ndim != 1 or len(genes) != n:
        return False
    seen = np.zeros(n, dtype=bool)
    if n and (genes.min() < 0 or genes.max() >= n):
        return False
    seen[genes] = True
    return bool(seen.all())


@dataclass(frozen=True)
class FitnessReport:
    fitness: int
    cut_points: tuple[int, ...]  # 1-based positions i with s_i == 0


def fitness(d, genes) -> FitnessReport:
    sums = np.cumsum(_values(d)[genes])
    cuts = np.flatnonzero(sums == 0) + 1
    return FitnessReport(len(cuts), tuple(int(c) for c in cuts))


def fitness_value(d, genes) -> int:
    return int(_k.count_zero_prefixes(_values(d), _genes(genes)))


def population_fitness(d, pop: np.ndarray) -> np.ndarray:
    """Fitness of every row of a (P, n) population matrix."""
    return _k.population_fitness(_values(d), np.ascontiguousarray(pop, dtype=np.int64))


def decode(d, genes) -> Partition:
    genes = _genes(genes)
    bounds = _k.block_bounds(_values(d), genes)
    return Partition(tuple(
        tuple(int(g) for g in genes[a:b]) for a, b in zip(bounds[:-1], bounds[1:])
    ))


def _genes(c) -> np.ndarray:
    return np.ascontiguousarray(c, dtype=np.int64)


# -- recombination ------------------------------------------------------------

def recomb1(c1, c2, k: Optional[int] = None, rng: Optional[np.random.Generator] = None):
    """Keep the first ``k`` genes of one parent, fill in the rest in the other's order."""
    c1, c2 = _genes(c1), _genes(c2)
    n = len(c1)
    if k is None:
        k = int(rng.integers(1, n + 1))
    if not 1 <= k <= n:
        raise ValueError(f"crossover point {k} outside [1, {n}]")
    return _k.prefix_then_rest(c1, c2, k), _k.prefix_then_rest(c2, c1, k)


def recomb2(d, c1, c2):
    """Partition-preserving crossover.

    Each child starts as a copy of its parent. Walking the other parent's
    blocks left to right, any block that is a proper subset of a block of the
    child is moved to the front of that block (the rest keeps its order),
    and the child is decoded again before the next block is tried.
    """
    darr = _values(d)
    c1, c2 = _genes(c1), _genes(c2)
    return _k.refine(darr, c2, c1), _k.refine(darr, c1, c2)


# -- mutation -----------------------------------------------------------------

def _uniforms(rng: np.random.Generator):
    u = rng.random(3)
    return float(u[0]), float(u[1]), float(u[2])


def mut1(genes, i: Optional[int] = None, j: Optional[int] = None,
         rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Inversion of ``genes[i..j]``; with no positions given, a uniform pair i < j is drawn."""
    genes = _genes(genes)
    if i is None:
        return _k.random_mutation(genes[:0], genes, _k.MUT1, *_uniforms(rng))
    if not 0 <= i < j < len(genes):
        raise ValueError(f"need 0 <= i < j < {len(genes)}, got {i}, {j}")
    out = genes.copy()
    _k.reverse_range(out, i, j)
    return out


def mut2(d, genes, i: Optional[int] = None, j: Optional[int] = None,
         rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Reverse the order of decoded blocks ``i..j``; genes inside each block keep their order."""
    darr, genes = _values(d), _genes(genes)
    if i is None:
        return _k.random_mutation(darr, genes, _k.MUT2, *_uniforms(rng))
    nblocks = len(_k.block_bounds(darr, genes)) - 1
    if not 0 <= i < j < nblocks:
        raise ValueError(f"need 0 <= i < j < {nblocks} blocks, got {i}, {j}")
    return _k.reverse_blocks(darr, genes, i, j)


def mut3(d, genes, k: Optional[int] = None, i: Optional[int] = None, j: Optional[int] = None,
         rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Inversion of positions ``i..j`` counted inside decoded block ``k``.

    The random form picks a block of size >= 2 uniformly, then a pair inside it.
    """
    darr, genes = _values(d), _genes(genes)
    if k is None:
        return _k.random_mutation(darr, genes, _k.MUT3, *_uniforms(rng))
    bounds = _k.block_bounds(darr, genes)
    start, stop = int(bounds[k]), int(bounds[k + 1])
    if not 0 <= i < j < stop - start:
        raise ValueError(f"positions {i}..{j} outside block {k} of size {stop - start}")
    out = genes.copy()
    _k.reverse_range(out, start + i, start + j)
    return out


# -- evolution loop -----------------------------------------------------------

@dataclass
class GAConfig:
    population_size: int = 80
    generations: int = 5000
    elite_count: int = 5
    mutation_probability: float = 0.75
    recombination_operator: Recombination = Recombination.RECOMB2
    mutation_operator: Mutation = Mutation.MUT1
    rng_seed: int = 0
    # "shuffle": random mating, each individual used once per pass over the population;
    # "tournament": tournaments of ``tournament_size`` drawn with replacement
    selection: str = "shuffle"
    tournament_size: int = 2
    # "parent": mutate a parent copy, then recombine it with the other parent;
    # "child": recombine first, then mutate the children
    mutation_stage: str = "parent"
    # stop as soon as the best individual reaches this fitness
    target_fitness: Optional[int] = None

    def __post_init__(self):
        self.recombination_operator = Recombination(self.recombination_operator)
        self.mutation_operator = Mutation(self.mutation_operator)
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if not 0 <= self.elite_count < self.population_size:
            raise ValueError("elite_count must be in [0, population_size)")
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ValueError("mutation_probability must be in [0, 1]")
        if self.selection not in ("shuffle", "tournament"):
            raise ValueError(f"unknown selection {self.selection!r}")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be at least 1")
        if self.mutation_stage not in ("parent", "child"):
            raise ValueError(f"unknown mutation_stage {self.mutation_stage!r}")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best_fitness: int
    mean_fitness: float


@dataclass
class GAResult:
    best: np.ndarray
    best_fitness: int
    history: list[GenerationRecord] = field(default_factory=list)


def random_population(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    return rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)


def _tournament(rng: np.random.Generator, fit: np.ndarray, count: int, size: int) -> np.ndarray:
    # ties go to the earliest entrant
    entrants = rng.integers(len(fit), size=(count, size))
    winner = np.argmax(fit[entrants], axis=1)
    return entrants[np.arange(count), winner]


def _shuffled(rng: np.random.Generator, size: int, count: int) -> np.ndarray:
    reps = -(-count // size)
    return np.concatenate([rng.permutation(size) for _ in range(reps)])[:count]


def evolve(d, cfg: GAConfig, on_generation: Optional[Callable[[GenerationRecord], None]] = None) -> GAResult:
    """Run the elitist GA and return the best chromosome ever seen.

    History holds one record per generation, generation 0 included: the best
    fitness seen so far and the current population's mean fitness.

    Each generation keeps the ``elite_count`` fittest individuals unchanged and
    fills the remaining slots with two offspring per parent pair. Every
    offspring is mutated with probability ``mutation_probability``; see
    ``GAConfig.mutation_stage`` for where in the pipeline that happens.
    """
    darr = _values(d)
    n = len(darr)
    rng = make_rng(cfg.rng_seed)
    size, elite = cfg.population_size, cfg.elite_count
    recomb_kind = _k.RECOMB1 if cfg.recombination_operator is Recombination.RECOMB1 else _k.RECOMB2
    mut_kind = {Mutation.MUT1: _k.MUT1, Mutation.MUT2: _k.MUT2, Mutation.MUT3: _k.MUT3}[cfg.mutation_operator]

    pop = random_population(rng, size, n)
    fit = _k.population_fitness(darr, pop)
    history: list[GenerationRecord] = []

    best, best_fit = pop[0].copy(), -1

    def record(gen: int) -> GenerationRecord:
        nonlocal best, best_fit
        top = int(np.argmax(fit))
        if fit[top] > best_fit:
            best, best_fit = pop[top].copy(), int(fit[top])
        rec = GenerationRecord(gen, best_fit, float(fit.mean()))
        history.append(rec)
        if on_generation is not None:
            on_generation(rec)
        return rec

    rec = record(0)
    slots = size - elite
    npairs = (slots + 1) // 2
    for gen in range(1, cfg.generations + 1):
        if cfg.target_fitness is not None and rec.best_fitness >= cfg.target_fitness:
            break
        elites = np.argsort(-fit, kind="stable")[:elite]
        if cfg.selection == "shuffle":
            parents = _shuffled(rng, size, 2 * npairs).reshape(npairs, 2)
        else:
            parents = _tournament(rng, fit, 2 * npairs, cfg.tournament_size).reshape(npairs, 2)
        cuts = rng.random(npairs)
        flags = rng.random(2 * npairs) < cfg.mutation_probability
        uniforms = rng.random((2 * npairs, 3))
        pop = _k.breed(darr, pop, parents, elites, recomb_kind, mut_kind, cfg.mutation_stage == "parent",
                       flags, uniforms, cuts)
        fit = _k.population_fitness(darr, pop)
        rec = record(gen)

    return GAResult(best, best_fit, history)


def random_search(d, evaluations: int, rng_seed: int = 0, batch: int = 2000) -> GAResult:
    """Best of ``evaluations`` independent uniform permutations.

    Permutations are drawn ``batch`` at a time; each batch adds one history
    record (best so far, batch mean), so with ``batch`` equal to a GA
    population size the history lines up with GA generations.
    """
    if evaluations < 1:
        raise ValueError("evaluations must be at least 1")
    darr = _values(d)
    rng = make_rng(rng_seed)
    best, best_fit = None, -1
    history: list[GenerationRecord] = []
    done = 0
    while done < evaluations:
        size = min(batch, evaluations - done)
        pop = random_population(rng, size, len(darr))
        fit = _k.population_fitness(darr, pop)
        top = int(np.argmax(fit))
        if fit[top] > best_fit:
            best, best_fit = pop[top].copy(), int(fit[top])
        history.append(GenerationRecord(len(history), best_fit, float(fit.mean())))
        done += size
    return GAResult(best, best_fit, history)
