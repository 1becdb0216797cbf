"""{1..n/2, -1..-n/2} for n = 100, 200, ...: best and average of 10 runs of 5000 generations."""
import argparse
import time

from debtclear.evolve import GAConfig, evolve
from debtclear.generate import hard_pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(range(100, 1001, 100)))
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--generations", type=int, default=5000)
    args = ap.parse_args()

    print("n,optimum,best,best_pct,avg,avg_pct,seconds")
    for n in args.sizes:
        d = hard_pairs(n).d
        start = time.perf_counter()
        bests = [evolve(d, GAConfig(generations=args.generations, rng_seed=s)).best_fitness
                 for s in range(args.runs)]
        opt, best, avg = n // 2, max(bests), sum(bests) / len(bests)
        print(f"{n},{opt},{best},{100 * best / opt:.1f},{avg:g},{100 * avg / opt:.1f},"
              f"{time.perf_counter() - start:.1f}", flush=True)


if __name__ == "__main__":
    main()
