"""Write the benchmark instances and matching bench configs.

    python scripts/build_instances.py --out data
    debtclear bench data/difficult.json
"""
import argparse
import json
from pathlib import Path

from benchmarks import CASES
from debtclear.experiment import instance_meta
from debtclear.formats import write_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="data")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, build in CASES.items():
        inst = build()
        write_instance(inst.d, out / f"{name}.txt", instance_meta(inst))
        print(f"{name}: n={inst.n} claimed={inst.claimed_optimum} ({inst.optimum_kind.value})")

    ga = {"population_size": 80, "elite_count": 5, "mutation_probability": 0.75, "rng_seed": 0}
    configs = {
        "difficult.json": {
            "instances": [f"pairs{n}.txt" for n in range(100, 1001, 100)],
            "ga": {**ga, "generations": 5000}, "repetitions": 10, "history_stride": 100,
            "output_dir": "results/difficult",
        },
        "convergence.json": {
            "instances": [f"bench1000{k}.txt" for k in "abc"],
            "ga": {**ga, "generations": 50000}, "repetitions": 1, "history_stride": 100,
            "output_dir": "results/convergence",
        },
        "random_search.json": {
            "instances": [f"bench100{k}.txt" for k in "abc"],
            "algorithm": "random_search", "evaluations": 100000, "repetitions": 10,
            "history_stride": 100, "output_dir": "results/random_search",
        },
    }
    for name, cfg in configs.items():
        (out / name).write_text(json.dumps(cfg, indent=2) + "\n")
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main()
