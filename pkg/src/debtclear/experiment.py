"""Repeated solver runs with per-run history CSVs and a summary table."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import BorrowingLedger, DebtVector, compute_debt_vector, greedy_settle
from .evolve import GAConfig, GenerationRecord, evolve, random_search
from .formats import load_instance
from .generate import GeneratedInstance
from .oracle import exact_max_partition

ALGORITHMS = ("ga", "random_search", "greedy", "exact")
HISTORY_HEADER = ("generation", "best_fitness", "mean_fitness")
SUMMARY_HEADER = ("n", "best", "best_pct", "avg", "avg_pct", "seconds")


@dataclass
class ExperimentSpec:
    instances: list[str]
    algorithm: str = "ga"
    ga: GAConfig = field(default_factory=GAConfig)
    repetitions: int = 10
    history_stride: int = 1
    # random search budget; defaults to population_size * generations
    evaluations: Optional[int] = None
    output_dir: str = "results"
    jobs: int = 1

    def __post_init__(self):
        if isinstance(self.instances, str):
            self.instances = [self.instances]
        if isinstance(self.ga, dict):
            self.ga = GAConfig(**self.ga)
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.history_stride < 1:
            raise ValueError("history_stride must be >= 1")

    @classmethod
    def from_json(cls, path) -> "ExperimentSpec":
        raw = json.loads(Path(path).read_text())
        base = Path(path).parent
        raw["instances"] = [str(base / p) for p in raw.get("instances", [])]
        return cls(**raw)


@dataclass
class RunResult:
    seed: int
    best: int
    seconds: float
    history: list[GenerationRecord]


@dataclass
class SummaryRow:
    instance: str
    n: int
    best: int
    avg: float
    seconds: float
    claimed_optimum: Optional[int] = None
    optimum_kind: Optional[str] = None

    def pct(self, value: float) -> Optional[float]:
        if not self.claimed_optimum:
            return None
        return 100.0 * value / self.claimed_optimum

    @property
    def best_pct(self) -> Optional[float]:
        return self.pct(self.best)

    @property
    def avg_pct(self) -> Optional[float]:
        return self.pct(self.avg)


def instance_meta(inst: GeneratedInstance) -> dict:
    return {
        "method": inst.method,
        "claimed_optimum": inst.claimed_optimum,
        "optimum_kind": inst.optimum_kind.value,
        "seed": inst.seed,
        "parameters": inst.parameters,
    }


def as_debts(instance) -> DebtVector:
    return compute_debt_vector(instance) if isinstance(instance, BorrowingLedger) else instance


def stride_history(history: list[GenerationRecord], stride: int) -> list[GenerationRecord]:
    """Every ``stride``-th record, always keeping the last one."""
    kept = [h for h in history if h.generation % stride == 0]
    if history and (not kept or kept[-1] is not history[-1]):
        kept.append(history[-1])
    return kept


def format_history(history: list[GenerationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HISTORY_HEADER)
    for h in history:
        w.writerow((h.generation, h.best_fitness, f"{h.mean_fitness:.6f}"))
    return buf.getvalue()


def _single_run(d: DebtVector, spec: ExperimentSpec, seed: int) -> RunResult:
    start = time.perf_counter()
    if spec.algorithm == "ga":
        result = evolve(d, dataclasses.replace(spec.ga, rng_seed=seed))
        best, history = result.best_fitness, result.history
    elif spec.algorithm == "random_search":
        budget = spec.evaluations or spec.ga.population_size * max(spec.ga.generations, 1)
        result = random_search(d, budget, seed, batch=spec.ga.population_size)
        best, history = result.best_fitness, result.history
    elif spec.algorithm == "greedy":
        best = len(d) - len(greedy_settle(d))
        history = [GenerationRecord(0, best, float(best))]
    else:
        best = exact_max_partition(d).max_blocks
        history = [GenerationRecord(0, best, float(best))]
    return RunResult(seed, best, time.perf_counter() - start, stride_history(history, spec.history_stride))


def run_experiment(spec: ExperimentSpec, write: bool = True, log=print) -> list[SummaryRow]:
    """Run every instance ``spec.repetitions`` times with seeds seed, seed+1, ...

    Writes ``<stem>_run<k>.csv`` histories and ``summary.csv`` into
    ``spec.output_dir`` once all runs are done.
    """
    rows: list[SummaryRow] = []
    outputs: dict[str, str] = {}
    for path in spec.instances:
        instance, meta = load_instance(path)
        d = as_debts(instance)
        seeds = [spec.ga.rng_seed + r for r in range(spec.repetitions)]
        if spec.jobs > 1:
            with ProcessPoolExecutor(spec.jobs) as pool:
                runs = list(pool.map(_single_run, [d] * len(seeds), [spec] * len(seeds), seeds))
        else:
            runs = [_single_run(d, spec, s) for s in seeds]
        stem = Path(path).stem
        for r, run in enumerate(runs):
            outputs[f"{stem}_run{r}.csv"] = format_history(run.history)
            log(f"{stem} run {r} seed {run.seed}: best {run.best} ({run.seconds:.1f}s)")
        row = SummaryRow(
            instance=str(path),
            n=len(d),
            best=max(run.best for run in runs),
            avg=sum(run.best for run in runs) / len(runs),
            seconds=sum(run.seconds for run in runs),
            claimed_optimum=meta.get("claimed_optimum"),
            optimum_kind=meta.get("optimum_kind"),
        )
        rows.append(row)
        log(describe_row(row))
    outputs["summary.csv"] = format_summary(rows)
    if write:
        out = Path(spec.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in outputs.items():
            (out / name).write_text(text)
    return rows


def _pct(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.1f}"


def format_summary(rows: list[SummaryRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for r in rows:
        w.writerow((r.n, r.best, _pct(r.best_pct), f"{r.avg:g}", _pct(r.avg_pct), f"{r.seconds:.1f}"))
    return buf.getvalue()


def describe_row(row: SummaryRow) -> str:
    text = f"n={row.n} best={row.best} avg={row.avg:g} time={row.seconds:.1f}s"
    if row.claimed_optimum:
        text += (f" | {row.best_pct:.1f}% / {row.avg_pct:.1f}% of claimed optimum"
                 f" {row.claimed_optimum} ({row.optimum_kind})")
    return text
