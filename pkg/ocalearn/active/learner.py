"""
Active learning loop for one-counter automata.

Each round makes the observation table d-closed and d-consistent, learns a
hypothesis from the table with OPNI, completes it with a sink and asks the
teacher for a minimal counterexample. Counterexample prefixes become rows and
raise d to the largest counter value seen along them.
"""

import logging
import time
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple

from ocalearn.automata.alphabet import Word, format_word
from ocalearn.automata.machines import Droca, Voca, complete_with_sink
from ocalearn.active.observation_table import ObservationTable, TableMode
from ocalearn.active.teacher import EquivalenceVerdict, Teacher, VerdictKind
from ocalearn.errors import BudgetExceeded, InputError, LearningTimeout
from ocalearn.passive.opni import opni
from ocalearn.utils.logging import PerformanceLogger

logger = logging.getLogger(__name__)


class LearnLimits:
    """
    Termination guards of a learning run.

    Attributes:
        max_rounds: Largest number of equivalence queries
        timeout_s: Wall-clock budget in seconds
        verify: Check every OPNI result against its sample
    """

    def __init__(self, max_rounds: int = 200, timeout_s: float = 300.0, verify: bool = True):
        if max_rounds < 0:
            raise InputError("max_rounds must not be negative")
        if timeout_s <= 0:
            raise InputError("timeout_s must be positive")
        self.max_rounds = max_rounds
        self.timeout_s = timeout_s
        self.verify = verify


class RoundRecord(NamedTuple):
    """Table size and bound when a hypothesis was handed to the teacher."""
    hypothesis_states: int
    r_size: int
    c_size: int
    d: int


class RunReport:
    """
    Metrics of one learning run.

    Attributes:
        learned_states: States of the last completed hypothesis, the added sink included
        rounds: One RoundRecord per equivalence query, in order
        phase_ms: Accumulated wall-clock time per phase (close, opni, msq)
    """

    def __init__(self, kind: str):
        self.kind = kind
        self.success = False
        self.presumed = False
        self.iterations = 0
        self.eq_queries = 0
        self.mq_count = 0
        self.cv_count = 0
        self.learned_states = 0
        self.longest_cex_len = 0
        self.counterexamples: List[Word] = []
        self.rounds: List[RoundRecord] = []
        self.phase_ms: Dict[str, float] = {}
        self.table_rows = 0
        self.table_cols = 0
        self.act_entries = 0
        self.d = 0
        self.wall_ms = 0.0
        self.timed_out_reason: Optional[str] = None

    def record(self, teacher: Teacher, table: ObservationTable, d: int, started: float,
               phase_totals: Optional[Dict[str, float]] = None) -> None:
        stats = teacher.stats
        self.eq_queries = stats.msq
        self.mq_count = stats.mq
        self.cv_count = stats.cv
        self.table_rows = table.num_rows
        self.table_cols = table.num_cols
        self.act_entries = len(table.act)
        self.d = d
        self.wall_ms = (time.perf_counter() - started) * 1000.0
        if phase_totals is not None:
            self.phase_ms = {name: seconds * 1000.0 for name, seconds in phase_totals.items()}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "success": self.success,
            "presumed": self.presumed,
            "iterations": self.iterations,
            "eq_queries": self.eq_queries,
            "mq_count": self.mq_count,
            "cv_count": self.cv_count,
            "learned_states": self.learned_states,
            "longest_cex_len": self.longest_cex_len,
            "table_rows": self.table_rows,
            "table_cols": self.table_cols,
            "act_entries": self.act_entries,
            "d": self.d,
            "wall_ms": round(self.wall_ms, 3),
            **{f"{name}_ms": round(ms, 3) for name, ms in self.phase_ms.items()},
            "timed_out_reason": self.timed_out_reason,
        }

    def __repr__(self) -> str:
        return f"RunReport({self.to_dict()})"


def close_and_consistify(table: ObservationTable, d: int, teacher: Teacher,
                         should_stop: Optional[Callable[[], bool]] = None) -> ObservationTable:
    """
    Grow the table until it is d-closed and d-consistent.

    An unmatched extension row moves into R; an inconsistency adds letter·suffix to C.
    The table is refilled after every change.

    Raises:
        BudgetExceeded: should_stop fired
    """
    table.fill(teacher)
    while True:
        if should_stop is not None and should_stop():
            raise BudgetExceeded(f"Stopped while closing {table!r}")
        missing = table.is_d_closed(d)
        if missing is not None:
            logger.debug(f"Not {d}-closed: adding row {format_word(missing)}")
            table.add_row(missing)
            table.fill(teacher)
            continue
        witness = table.is_d_consistent(d)
        if witness is not None:
            column = (witness.letter,) + witness.suffix
            logger.debug(f"Not {d}-consistent: rows {format_word(witness.r)} and {format_word(witness.s)}, "
                         f"adding column {format_word(column)}")
            table.add_column(column)
            table.fill(teacher)
            continue
        return table


def process_counterexample(table: ObservationTable, z: Word, teacher: Teacher, d: int) -> int:
    """
    Add every prefix of a counterexample to R and return the new bound d.

    Raises:
        InputError: z is the empty word
    """
    if not z:
        raise InputError("The empty word cannot be a counterexample")
    table.add_row(z)
    table.fill(teacher)
    values = [table.counter_value(z[:end], teacher) for end in range(len(z) + 1)]
    return max([d] + [v for v in values if v is not None])


def _learn(teacher: Teacher, limits: LearnLimits, mode: TableMode) -> Tuple[Droca, RunReport]:
    partition = teacher.partition if mode is TableMode.VOCA else None
    if mode is TableMode.VOCA and partition is None:
        raise InputError("VOCA learning needs a teacher with a Voca target")

    started = time.perf_counter()
    deadline = started + limits.timeout_s
    report = RunReport(mode.value)
    table = ObservationTable(teacher.alphabet, mode, partition)
    perf = PerformanceLogger(logger, f"learn-{mode.value}")
    d = 0
    hypothesis: Optional[Droca] = None

    def should_stop() -> bool:
        return time.perf_counter() > deadline

    def give_up(reason: str) -> LearningTimeout:
        report.timed_out_reason = reason
        report.record(teacher, table, d, started, perf.totals)
        if hypothesis is not None:
            report.learned_states = hypothesis.num_states
        logger.warning(f"Learning stopped: {reason}")
        return LearningTimeout(reason, report=report, hypothesis=hypothesis)

    while True:
        if report.iterations >= limits.max_rounds:
            raise give_up(f"reached {limits.max_rounds} equivalence rounds")
        try:
            with perf.measure("close"):
                close_and_consistify(table, d, teacher, should_stop)
            sample, ce = table.extract_sample(teacher)
            with perf.measure("opni"):
                machine = opni(sample, ce, teacher.alphabet, partition=partition,
                               verify=limits.verify, should_stop=should_stop)
        except BudgetExceeded:
            raise give_up(f"exceeded {limits.timeout_s}s wall-clock budget") from None

        hypothesis = complete_with_sink(machine)
        with perf.measure("msq"):
            verdict: EquivalenceVerdict = teacher.msq(hypothesis)
        report.iterations += 1
        report.rounds.append(RoundRecord(hypothesis.num_states, len(table.rows), len(table.columns), d))
        logger.info(f"Round {report.iterations}: {hypothesis.num_states} states, "
                    f"table {table.num_rows}x{table.num_cols}, d={d}, {verdict}")

        if verdict.kind is not VerdictKind.COUNTEREXAMPLE:
            report.success = True
            report.presumed = verdict.kind is VerdictKind.PRESUMED_EQUIVALENT
            if report.presumed:
                logger.warning(f"Accepted hypothesis without a closed equivalence search ({verdict.bound})")
            break

        z = verdict.word
        report.counterexamples.append(z)
        report.longest_cex_len = max(report.longest_cex_len, len(z))
        d = process_counterexample(table, z, teacher, d)
        if should_stop():
            raise give_up(f"exceeded {limits.timeout_s}s wall-clock budget")

    report.learned_states = hypothesis.num_states
    report.record(teacher, table, d, started, perf.totals)
    logger.info(f"Learned {hypothesis!r} in {report.iterations} rounds ({report.wall_ms:.1f} ms)")
    return hypothesis, report


def learn_droca(teacher: Teacher, limits: Optional[LearnLimits] = None) -> Tuple[Droca, RunReport]:
    """
    Learn the teacher's target as a complete Droca.

    Args:
        teacher: Teacher over a complete Droca
        limits: Round and time budget

    Returns:
        (Droca, RunReport): The last hypothesis and the run metrics

    Raises:
        LearningTimeout: a limit was hit; carries the partial report and last hypothesis
    """
    return _learn(teacher, limits or LearnLimits(), TableMode.DROCA)


def learn_voca(teacher: Teacher, limits: Optional[LearnLimits] = None) -> Tuple[Voca, RunReport]:
    """
    Learn the teacher's target as a Voca. The letter classes are read from the
    target, counter values are computed from them, and no action tuples are kept.

    Raises:
        InputError: the teacher's target is not a Voca
        LearningTimeout: a limit was hit
    """
    return _learn(teacher, limits or LearnLimits(), TableMode.VOCA)
