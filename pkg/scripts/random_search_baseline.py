"""GA best-of-N against random search with the same number of fitness evaluations."""
import argparse
import dataclasses

from benchmarks import CASES
from debtclear.evolve import GAConfig, evolve, random_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cases", nargs="*", default=["bench100a", "bench100b", "bench100c", "pairs100"])
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--evaluations", type=int, default=100000)
    args = ap.parse_args()

    cfg = GAConfig(population_size=100, generations=args.evaluations // 100)
    print("case,claimed,ga_best,random_best")
    for name in args.cases:
        inst = CASES[name]()
        ga = max(evolve(inst.d, dataclasses.replace(cfg, rng_seed=s)).best_fitness for s in range(args.runs))
        rs = max(random_search(inst.d, args.evaluations, s).best_fitness for s in range(args.runs))
        print(f"{name},{inst.claimed_optimum},{ga},{rs}", flush=True)


if __name__ == "__main__":
    main()
