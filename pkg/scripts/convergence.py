"""Best fitness as a percentage of the claimed optimum over a long run on the n = 1000 cases."""
import argparse
import csv
import sys
import time

from benchmarks import bench1000
from debtclear.evolve import GAConfig, evolve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", default="abc")
    ap.add_argument("--generations", type=int, default=50000)
    ap.add_argument("--every", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out)
    w.writerow(["case", "generation", "best_fitness", "pct_of_claimed"])
    for case in args.cases:
        inst = bench1000(case)
        start = time.perf_counter()
        res = evolve(inst.d, GAConfig(generations=args.generations, rng_seed=args.seed))
        for h in res.history[::args.every]:
            w.writerow([case, h.generation, h.best_fitness, f"{100 * h.best_fitness / inst.claimed_optimum:.1f}"])
        out.flush()
        print(f"# bench1000{case}: {res.best_fitness}/{inst.claimed_optimum} "
              f"({100 * res.best_fitness / inst.claimed_optimum:.1f}%) in {time.perf_counter() - start:.0f}s",
              file=sys.stderr)


if __name__ == "__main__":
    main()
