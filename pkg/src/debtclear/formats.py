"""Plain-text instance and solution files.

Ledger file::

    # optional comment / metadata lines
    n m
    borrower lender amount      (m lines, 1-indexed entities)

Debt file::

    # method: 3
    # claimed_optimum: 4
    D n
    d_1 d_2 ... d_n             (whitespace separated, may span lines)

Solution file::

    t
    sender receiver amount      (t lines, 1-indexed entities)

Metadata comments have the form ``# key: value``; ``parameters`` holds JSON.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import (
    Borrowing,
    BorrowingLedger,
    DebtError,
    DebtVector,
    TransactionPlan,
    Transfer,
)

Instance = Union[BorrowingLedger, DebtVector]

_INT_META = ("method", "claimed_optimum", "seed")


class ParseError(DebtError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<text>"):
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


def _tokens(text: str, source: str):
    """Yield (line_number, token) pairs, skipping comments and blank lines; also collect metadata."""
    meta: dict = {}
    toks: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.replace("−", "-").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        toks.extend((lineno, t) for t in line.split())
    return toks, _convert_meta(meta)


def _convert_meta(meta: dict) -> dict:
    out = dict(meta)
    for key in _INT_META:
        if key in out and out[key] not in ("", "None"):
            out[key] = int(out[key])
    if "parameters" in out:
        out["parameters"] = json.loads(out["parameters"])
    return out


def _int(tok: tuple[int, str], source: str) -> int:
    lineno, text = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", lineno, source) from None


def parse_text(text: str, source: str = "<text>") -> tuple[Instance, dict]:
    toks, meta = _tokens(text, source)
    if not toks:
        raise ParseError("empty instance", None, source)
    lineno = toks[0][0]
    try:
        if toks[0][1] == "D":
            if len(toks) < 2:
                raise ParseError("missing entity count", lineno, source)
            n = _int(toks[1], source)
            values = [_int(t, source) for t in toks[2:]]
            if len(values) != n:
                raise ParseError(f"expected {n} D values, found {len(values)}", toks[-1][0], source)
            return DebtVector(values), meta
        if len(toks) < 2:
            raise ParseError("header must be 'n m'", lineno, source)
        n, m = _int(toks[0], source), _int(toks[1], source)
        body = toks[2:]
        if len(body) != 3 * m:
            raise ParseError(f"expected {m} records of 3 integers", body[-1][0] if body else lineno, source)
        records = []
        for r in range(m):
            b, l, a = (_int(t, source) for t in body[3 * r:3 * r + 3])
            records.append(Borrowing(b - 1, l - 1, a))
        return BorrowingLedger(n, tuple(records)), meta
    except ParseError:
        raise
    except DebtError as exc:
        # domain validation failures keep their type; attach the source for context
        exc.args = (f"{source}: {exc}",)
        raise


def load_instance(path) -> tuple[Instance, dict]:
    path = Path(path)
    return parse_text(path.read_text(), str(path))


def parse_instance(path) -> Instance:
    return load_instance(path)[0]


def _meta_lines(meta: dict | None) -> list[str]:
    lines = []
    for key, value in (meta or {}).items():
        if value is None:
            continue
        if key == "parameters":
            value = json.dumps(value, sort_keys=True)
        lines.append(f"# {key}: {value}")
    return lines


def format_debt_vector(d: DebtVector, meta: dict | None = None, per_line: int = 20) -> str:
    lines = _meta_lines(meta) + [f"D {len(d)}"]
    vals = list(d)
    for i in range(0, len(vals), per_line):
        lines.append(" ".join(str(v) for v in vals[i:i + per_line]))
    return "\n".join(lines) + "\n"


def format_ledger(ledger: BorrowingLedger, meta: dict | None = None) -> str:
    lines = _meta_lines(meta) + [f"{ledger.n} {ledger.m}"]
    lines += [f"{r.borrower + 1} {r.lender + 1} {r.amount}" for r in ledger.records]
    return "\n".join(lines) + "\n"


def write_instance(instance: Instance, path, meta: dict | None = None) -> None:
    if isinstance(instance, BorrowingLedger):
        text = format_ledger(instance, meta)
    else:
        text = format_debt_vector(instance, meta)
    Path(path).write_text(text)


def format_solution(plan: TransactionPlan) -> str:
    lines = [str(len(plan))] + [f"{t.sender + 1} {t.receiver + 1} {t.amount}" for t in plan]
    return "\n".join(lines) + "\n"


def write_solution(plan: TransactionPlan, path) -> None:
    Path(path).write_text(format_solution(plan))


def parse_solution_text(text: str, source: str = "<text>") -> TransactionPlan:
    toks, _ = _tokens(text, source)
    if not toks:
        raise ParseError("empty solution", None, source)
    count = _int(toks[0], source)
    body = toks[1:]
    if len(body) != 3 * count:
        raise ParseError(f"expected {count} transfers of 3 integers", body[-1][0] if body else toks[0][0], source)
    transfers = []
    for r in range(count):
        s, t, a = (_int(x, source) for x in body[3 * r:3 * r + 3])
        try:
            transfers.append(Transfer(s - 1, t - 1, a))
        except DebtError as exc:
            raise ParseError(str(exc), body[3 * r][0], source) from None
    return TransactionPlan(tuple(transfers))


def parse_solution(path) -> TransactionPlan:
    path = Path(path)
    return parse_solution_text(path.read_text(), str(path))
