"""Generators for the improvement tables and the exact covering number table."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from .bounds import ParamSet, make_params, schonheim, thm_1_1, thm_5_3, thm_6_2
from .construct import exact_range
from .gf import prime_power


@dataclass(frozen=True)
class TableRow:
    k: int
    v: int
    improvement: int
    source: str
    superscript: str = ""

    def label(self) -> str:
        text = str(self.v)
        if self.improvement >= 2:
            text += f"_{self.improvement}"
        if self.superscript:
            text += f"^{self.superscript}"
        return text


@dataclass(frozen=True)
class ExactRow:
    k: int
    q: int
    values: tuple[int, ...]

    def label(self) -> str:
        vals = self.values
        if len(vals) >= 3:
            return f"{vals[0]},...,{vals[-1]}"
        return ", ".join(map(str, vals))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("COVERA_THREADS", "1")))
    except ValueError:
        return 1


def _baseline(p: ParamSet, refined: bool) -> int:
    value, plus1 = schonheim(p)
    return value + 1 if refined and plus1 else value


def _row_table1(p: ParamSet, refined: bool) -> Optional[TableRow]:
    new = thm_1_1(p)
    base = _baseline(p, refined)
    if new is not None and new > base:
        return TableRow(p.k, p.v, new - base, "thm_1_1")
    return None


def _row_table2(p: ParamSet, refined: bool) -> Optional[TableRow]:
    new = thm_5_3(p)
    base = _baseline(p, refined)
    if new is not None and new > base:
        return TableRow(p.k, p.v, new - base, "thm_5_3")
    return None


def _row_table3(p: ParamSet, refined: bool) -> Optional[TableRow]:
    base = thm_1_1(p)
    parts = thm_6_2(p)
    if base is None or not parts:
        return None
    best = max(parts.values())
    if best <= base:
        return None
    superscript = "".join(x for x in "bc" if x in parts and parts[x] > parts["a"])
    source = next(f"thm_6_2{x}" for x in "abc" if parts.get(x) == best)
    return TableRow(p.k, p.v, best - base, source, superscript)


_ROW_RULES: dict[int, Callable[[ParamSet, bool], Optional[TableRow]]] = {
    1: _row_table1,
    2: _row_table2,
    3: _row_table3,
}

DEFAULT_K_MAX = {1: 12, 2: 20, 3: 13, 4: 147}


def _rows_for_k(n: int, k: int, lam: int, refined: bool) -> list[TableRow]:
    rule = _ROW_RULES[n]
    rows = []
    # r < k is needed for any improvement, i.e. lam(v-1) <= k(k-1)
    for v in range(k + 1, k * (k - 1) // lam + 2):
        if 4 * v <= 13 * k:
            continue
        row = rule(make_params(v, k, lam), refined)
        if row is not None:
            rows.append(row)
    return rows


def improvement_table(n: int, k_max: Optional[int] = None, lam: int = 1,
                      refined: bool = False) -> list[TableRow]:
    """Rows of table n (1, 2 or 3): values v > 13k/4 where the new bound wins."""
    if n not in _ROW_RULES:
        raise ValueError(f"table must be 1, 2 or 3, got {n}")
    k_max = DEFAULT_K_MAX[n] if k_max is None else k_max
    ks = range(3, k_max + 1)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        chunks = list(pool.map(lambda k: _rows_for_k(n, k, lam, refined), ks))
    return [row for chunk in chunks for row in chunk]


def exact_table(k_max: int = 147, q_min: int = 4) -> list[ExactRow]:
    """Rows (k, q, v-values) where the blow-up construction pins C(v, k) = q^2 + q."""
    rows = []
    for k in range(3, k_max + 1):
        for q in range(max(q_min, 2), k + 1):
            if k % q or prime_power(q) is None:
                continue
            s = k // q
            if s < 2 * q + 1:
                continue
            values = exact_range(q, s).beyond_schonheim()
            if values:
                rows.append(ExactRow(k, q, tuple(values)))
    return rows


def render(rows, fmt: str = "text") -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(asdict(r), sort_keys=True) + "\n" for r in rows)
    exact = bool(rows) and isinstance(rows[0], ExactRow)
    if fmt == "tsv":
        if exact:
            lines = ["k\tq\tv"]
            lines += [f"{r.k}\t{r.q}\t{','.join(map(str, r.values))}" for r in rows]
        else:
            lines = ["k\tv\timprovement\tsuperscript"]
            lines += [f"{r.k}\t{r.v}\t{r.improvement}\t{r.superscript}" for r in rows]
        return "\n".join(lines) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if exact:
        lines = [f"{'k':>4}  {'q':>2}  v"]
        lines += [f"{r.k:>4}  {r.q:>2}  {r.label()}" for r in rows]
        return "\n".join(lines) + "\n"
    by_k: dict[int, list[str]] = {}
    for r in rows:
        by_k.setdefault(r.k, []).append(r.label())
    lines = [f"{k:>3} | {', '.join(labels)}" for k, labels in by_k.items()]
    return "\n".join(lines) + ("\n" if lines else "")
