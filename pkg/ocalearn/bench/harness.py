"""
Benchmark sweeps: generate random targets, learn them actively, write CSV.

One record per generated machine goes to the main CSV; a companion
``<stem>_summary.csv`` holds per-cell averages over the successful runs only.
"""

import csv
import hashlib
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ocalearn.active.learner import LearnLimits, learn_droca, learn_voca
from ocalearn.active.teacher import Teacher, TeacherLimits, brute_force_equiv
from ocalearn.bench.randgen import GenConfig, random_droca, random_voca
from ocalearn.errors import GenerationError, InputError, LearningTimeout

logger = logging.getLogger(__name__)

KINDS = ("droca", "voca")

BENCH_FIELDS = ("kind", "n_states", "alphabet_size", "seed", "success", "wall_ms", "eq_queries",
                "mq_count", "cv_count", "learned_states", "longest_cex_len", "table_rows",
                "table_cols")

SUMMARY_FIELDS = ("kind", "n_states", "alphabet_size", "total", "successes", "avg_eq_queries",
                  "avg_longest_cex_len", "avg_learned_states", "avg_table_rows", "avg_table_cols",
                  "avg_wall_ms")

_AVERAGED = ("eq_queries", "longest_cex_len", "learned_states", "table_rows", "table_cols", "wall_ms")


class BenchRecord(NamedTuple):
    kind: str
    n_states: int
    alphabet_size: int
    seed: int
    success: bool
    wall_ms: float
    eq_queries: int
    mq_count: int
    cv_count: int
    learned_states: int
    longest_cex_len: int
    table_rows: int
    table_cols: int

    def as_row(self) -> List[str]:
        row = []
        for name, value in zip(self._fields, self):
            if isinstance(value, bool):
                row.append("true" if value else "false")
            elif isinstance(value, float):
                row.append(f"{value:.3f}")
            else:
                row.append(str(value))
        return row


class BenchSettings:
    """Everything a single benchmark task needs; picklable for worker processes."""

    def __init__(self, kind: str = "droca", timeout_s: float = 300.0, max_rounds: int = 200,
                 verify_len: int = 0, max_restarts: int = 10000, reach_cutoff: Optional[int] = None,
                 teacher_limits: Optional[TeacherLimits] = None, verify_lemmas: bool = True):
        if kind not in KINDS:
            raise InputError(f"Unknown benchmark kind {kind!r}; expected one of {', '.join(KINDS)}")
        self.kind = kind
        self.timeout_s = timeout_s
        self.max_rounds = max_rounds
        self.verify_len = verify_len
        self.max_restarts = max_restarts
        self.reach_cutoff = reach_cutoff
        self.teacher_limits = teacher_limits or TeacherLimits()
        self.verify_lemmas = verify_lemmas


def instance_seed(master_seed: int, n_states: int, alphabet_size: int, index: int) -> int:
    """
    Seed of one benchmark instance: the first 8 bytes of
    sha256("master:n:k:index"), big-endian, masked to 63 bits.
    """
    text = f"{master_seed}:{n_states}:{alphabet_size}:{index}".encode("ascii")
    digest = hashlib.sha256(text).digest()
    return int.from_bytes(digest[:8], "big") & ((1 << 63) - 1)


def run_instance(task: Tuple[BenchSettings, int, int, int]) -> BenchRecord:
    """Generate and learn one machine. Failures become success=false records."""
    settings, n_states, alphabet_size, seed = task
    failed = BenchRecord(settings.kind, n_states, alphabet_size, seed, False, 0.0, 0, 0, 0, 0, 0, 0, 0)

    config = GenConfig(n_states, alphabet_size, seed, settings.max_restarts, settings.reach_cutoff)
    try:
        target = random_droca(config) if settings.kind == "droca" else random_voca(config)
    except (GenerationError, InputError) as e:
        logger.warning(f"Skipping instance n={n_states} k={alphabet_size} seed={seed}: {e}")
        return failed

    teacher = Teacher(target, settings.teacher_limits)
    limits = LearnLimits(settings.max_rounds, settings.timeout_s, settings.verify_lemmas)
    learn = learn_droca if settings.kind == "droca" else learn_voca
    try:
        hypothesis, report = learn(teacher, limits)
    except LearningTimeout as e:
        report = e.report
        logger.info(f"Timeout on n={n_states} k={alphabet_size} seed={seed}: {e}")
        if report is None:
            return failed
        hypothesis = None

    success = report.success
    if success and settings.verify_len > 0:
        mismatch = brute_force_equiv(target, hypothesis, settings.verify_len)
        if mismatch is not None:
            logger.warning(f"Learned machine for seed {seed} differs from its target on {mismatch[0]}")
            success = False

    return BenchRecord(settings.kind, n_states, alphabet_size, seed, success, report.wall_ms,
                       report.eq_queries, report.mq_count, report.cv_count, report.learned_states,
                       report.longest_cex_len, report.table_rows, report.table_cols)


def bench_tasks(settings: BenchSettings, state_range: Sequence[int], alphabet_range: Sequence[int],
                per_cell: int, master_seed: int) -> Iterator[Tuple[BenchSettings, int, int, int]]:
    for n in state_range:
        for k in alphabet_range:
            for index in range(per_cell):
                yield settings, n, k, instance_seed(master_seed, n, k, index)


def summarize(records: Iterable[BenchRecord]) -> List[Dict[str, object]]:
    """Per (kind, n, k) cell: totals and averages over successful records."""
    cells: Dict[Tuple[str, int, int], List[BenchRecord]] = {}
    for record in records:
        cells.setdefault((record.kind, record.n_states, record.alphabet_size), []).append(record)

    rows = []
    for (kind, n, k), members in cells.items():
        successes = [r for r in members if r.success]
        row: Dict[str, object] = {"kind": kind, "n_states": n, "alphabet_size": k,
                                  "total": len(members), "successes": len(successes)}
        for field in _AVERAGED:
            if successes:
                row[f"avg_{field}"] = f"{sum(getattr(r, field) for r in successes) / len(successes):.3f}"
            else:
                row[f"avg_{field}"] = ""
        rows.append(row)
    return rows


def summary_path(out_csv: str) -> str:
    return os.path.splitext(out_csv)[0] + "_summary.csv"


def run_bench(settings: BenchSettings, state_range: Sequence[int], alphabet_range: Sequence[int],
              per_cell: int, master_seed: int, out_csv: str, workers: int = 1) -> List[BenchRecord]:
    """
    Run a sweep and write the record and summary CSV files.

    Args:
        settings: Per-task settings
        state_range: Values of n
        alphabet_range: Alphabet sizes
        per_cell: Machines per (n, k) cell
        master_seed: Seed from which every instance seed is derived
        out_csv: Record file; the summary goes next to it
        workers: Worker processes (1 runs inline)

    Returns:
        List[BenchRecord]: Records in sweep order
    """
    tasks = list(bench_tasks(settings, state_range, alphabet_range, per_cell, master_seed))
    logger.info(f"Benchmark: {len(tasks)} {settings.kind} instances on {workers} worker(s)")

    directory = os.path.dirname(out_csv)
    if directory:
        os.makedirs(directory, exist_ok=True)

    records: List[BenchRecord] = []
    with open(out_csv, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow(BENCH_FIELDS)
        if workers <= 1:
            results: Iterable[BenchRecord] = map(run_instance, tasks)
            for record in results:
                writer.writerow(record.as_row())
                records.append(record)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for record in pool.map(run_instance, tasks):
                    writer.writerow(record.as_row())
                    f.flush()
                    records.append(record)

    with open(summary_path(out_csv), 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=SUMMARY_FIELDS)
        writer.writeheader()
        writer.writerows(summarize(records))

    successes = sum(1 for r in records if r.success)
    logger.info(f"Benchmark done: {successes}/{len(records)} learned, written to {out_csv}")
    return records
