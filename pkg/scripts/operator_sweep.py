"""Every recombination/mutation pair at mutation probabilities 0.0, 0.1, ..., 1.0.

Population 100, elitism 5, 1000 generations, 10 runs per setting on the
three n = 100 cases, plus random search with the same evaluation budget.
Writes one CSV row per (case, operators, probability).
"""
import argparse
import csv
import itertools
import sys

import numpy as np

from benchmarks import bench100
from debtclear.evolve import GAConfig, Mutation, Recombination, evolve, random_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", default="abc")
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--generations", type=int, default=1000)
    ap.add_argument("--population-size", type=int, default=100)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out)
    w.writerow(["case", "claimed", "recombination", "mutation", "p", "best", "avg_best", "avg_fitness"])
    probs = [round(0.1 * i, 1) for i in range(11)]
    for case in args.cases:
        inst = bench100(case)
        for rec, mut, p in itertools.product(Recombination, Mutation, probs):
            bests, means = [], []
            for seed in range(args.runs):
                cfg = GAConfig(population_size=args.population_size, generations=args.generations, elite_count=5,
                               mutation_probability=p, recombination_operator=rec, mutation_operator=mut,
                               rng_seed=seed)
                res = evolve(inst.d, cfg)
                bests.append(res.best_fitness)
                means.append(res.history[-1].mean_fitness)
            w.writerow([case, inst.claimed_optimum, rec.value, mut.value, p, max(bests),
                        f"{np.mean(bests):.2f}", f"{np.mean(means):.2f}"])
            out.flush()
        budget = args.population_size * args.generations
        rs = max(random_search(inst.d, budget, seed).best_fitness for seed in range(args.runs))
        print(f"# bench100{case}: random search best {rs} over {budget} evaluations", file=sys.stderr)


if __name__ == "__main__":
    main()
