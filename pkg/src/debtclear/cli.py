"""Command-line entry point: ``debtclear <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 parse/validation error,
3 solver limit exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import DebtError, TransactionPlan, greedy_settle, settle_partition, verify_clearing
from .evolve import GAConfig, Mutation, Recombination, decode, evolve, random_search
from .experiment import ExperimentSpec, as_debts, format_history, instance_meta, run_experiment
from .formats import format_debt_vector, format_solution, load_instance, write_instance
from .generate import (
    GeneratedInstance,
    OptimumKind,
    gen_method1,
    gen_method2,
    gen_method3,
    gen_method4,
    gen_method5,
    labeled,
)
from .oracle import InstanceTooLargeError, exact_max_partition

EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_LIMIT = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(d, plan: TransactionPlan, out) -> None:
    if not verify_clearing(d, plan):
        raise RuntimeError("internal error: produced plan does not clear the debts")
    text = format_solution(plan)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _ga_config(args) -> GAConfig:
    return GAConfig(
        population_size=args.population_size,
        generations=args.generations,
        elite_count=args.elite_count,
        mutation_probability=args.mutation_probability,
        recombination_operator=args.recombination_operator,
        mutation_operator=args.mutation_operator,
        rng_seed=args.rng_seed,
        selection=args.selection,
        tournament_size=args.tournament_size,
        mutation_stage=args.mutation_stage,
        target_fitness=args.target_fitness,
    )


def cmd_solve(args) -> int:
    d = as_debts(load_instance(args.instance)[0])
    cfg = _ga_config(args)
    print(f"# seed {cfg.rng_seed}", file=sys.stderr)
    result = evolve(d, cfg)
    if args.history:
        Path(args.history).write_text(format_history(result.history))
    plan = settle_partition(d, decode(d, result.best))
    print(f"# fitness {result.best_fitness}, {len(plan)} transfers", file=sys.stderr)
    _emit(d, plan, args.output)
    return 0


def cmd_greedy(args) -> int:
    d = as_debts(load_instance(args.instance)[0])
    plan = greedy_settle(d)
    print(f"# {len(plan)} transfers", file=sys.stderr)
    _emit(d, plan, args.output)
    return 0


def cmd_exact(args) -> int:
    d = as_debts(load_instance(args.instance)[0])
    res = exact_max_partition(d, limit=args.limit)
    blocks = " | ".join(" ".join(str(i + 1) for i in b) for b in res.witness)
    print(f"# max_blocks {res.max_blocks}; blocks: {blocks}", file=sys.stderr)
    _emit(d, settle_partition(d, res.witness), args.output)
    return 0


def cmd_random_search(args) -> int:
    d = as_debts(load_instance(args.instance)[0])
    print(f"# seed {args.rng_seed}", file=sys.stderr)
    result = random_search(d, args.evaluations, args.rng_seed)
    plan = settle_partition(d, decode(d, result.best))
    print(f"# fitness {result.best_fitness}, {len(plan)} transfers", file=sys.stderr)
    _emit(d, plan, args.output)
    return 0


def _load_generated(path) -> GeneratedInstance:
    instance, meta = load_instance(path)
    d = as_debts(instance)
    if "claimed_optimum" in meta:
        return GeneratedInstance(d, meta["claimed_optimum"], meta.get("optimum_kind", OptimumKind.LOWER_BOUND),
                                 meta.get("method"), meta.get("seed"), meta.get("parameters", {}))
    return labeled(d)


def cmd_gen(args) -> int:
    m = args.method
    if m in (1, 5) or (m == 2 and args.base):
        if not args.base:
            raise UsageError(f"method {m} needs --base")
        base = _load_generated(args.base)
    else:
        base = None
    if m == 1:
        inst = gen_method1(base, args.k)
    elif m == 2:
        pairs = args.pairs if args.pairs else list(range(1, args.pairs_upto + 1))
        inst = gen_method2(base, pairs)
    elif m == 3:
        inst = gen_method3(args.count_positive, tuple(args.range), args.seed, args.first_group_size,
                           args.max_attempts)
    elif m == 4:
        inst = gen_method4(args.n, args.l, tuple(args.range), args.seed)
    else:
        inst = gen_method5(base, args.copies)
    print(f"# method {m}: n={inst.n} claimed_optimum={inst.claimed_optimum} ({inst.optimum_kind.value})"
          f" seed={inst.seed}", file=sys.stderr)
    if args.output:
        write_instance(inst.d, args.output, instance_meta(inst))
    else:
        sys.stdout.write(format_debt_vector(inst.d, instance_meta(inst)))
    return 0


def cmd_bench(args) -> int:
    spec = ExperimentSpec.from_json(args.config)
    if args.output_dir:
        spec.output_dir = args.output_dir
    print(f"# seeds {spec.ga.rng_seed}..{spec.ga.rng_seed + spec.repetitions - 1}", file=sys.stderr)
    run_experiment(spec)
    return 0


def _add_ga_flags(p) -> None:
    defaults = GAConfig()
    p.add_argument("--population-size", type=int, default=defaults.population_size)
    p.add_argument("--generations", type=int, default=defaults.generations)
    p.add_argument("--elite-count", type=int, default=defaults.elite_count)
    p.add_argument("--mutation-probability", type=float, default=defaults.mutation_probability)
    p.add_argument("--recombination-operator", choices=[r.value for r in Recombination],
                   default=defaults.recombination_operator.value)
    p.add_argument("--mutation-operator", choices=[m.value for m in Mutation],
                   default=defaults.mutation_operator.value)
    p.add_argument("--rng-seed", type=int, default=defaults.rng_seed)
    p.add_argument("--selection", choices=["shuffle", "tournament"], default=defaults.selection)
    p.add_argument("--tournament-size", type=int, default=defaults.tournament_size)
    p.add_argument("--mutation-stage", choices=["parent", "child"], default=defaults.mutation_stage)
    p.add_argument("--target-fitness", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="debtclear", description="Minimise the number of transfers that clear a set of debts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="genetic algorithm")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.add_argument("--history", help="write the per-generation history CSV here")
    _add_ga_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("greedy", help="pairwise greedy settlement")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("exact", help="exact optimum (at most 20 nonzero entries)")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("random-search", help="best of independent random permutations")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.add_argument("--evaluations", type=int, default=100000)
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_random_search)

    p = sub.add_parser("gen", help="generate an instance (methods 1-5)")
    p.add_argument("method", type=int, choices=range(1, 6))
    p.add_argument("-o", "--output")
    p.add_argument("--base", help="base debt file (methods 1, 2, 5)")
    p.add_argument("--k", type=int, default=0, help="zeros to append (method 1)")
    p.add_argument("--pairs", type=int, nargs="*", help="pair values x (method 2)")
    p.add_argument("--pairs-upto", type=int, default=0, help="pairs 1..N (method 2)")
    p.add_argument("--count-positive", type=int, default=4, help="method 3")
    p.add_argument("--first-group-size", type=int, default=None, help="method 3")
    p.add_argument("--max-attempts", type=int, default=1000, help="method 3")
    p.add_argument("--n", type=int, default=10, help="method 4")
    p.add_argument("--l", type=int, default=2, help="method 4")
    p.add_argument("--range", type=int, nargs=2, default=[1, 1000], metavar=("LO", "HI"))
    p.add_argument("--copies", type=int, default=2, help="method 5")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run an experiment described by a JSON file")
    p.add_argument("config")
    p.add_argument("--output-dir")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (DebtError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
