"""
Simulated teacher over a hidden target machine.

Answers membership (mq), counter-value (cv) and minimal synchronous-equivalence
(msq) queries. Equivalence is decided by a breadth-first search over the
synchronized product of target and hypothesis, which compares acceptance and
counter values after every prefix and so returns the llex-smallest mismatch.
"""

import logging
from collections import deque
from enum import Enum
from typing import Deque, Dict, Optional, Set, Tuple

from ocalearn.automata.alphabet import Word, format_word
from ocalearn.automata.machines import Configuration, Droca, Voca
from ocalearn.errors import InputError, SynchronizationError

logger = logging.getLogger(__name__)


class MismatchKind(Enum):
    MEMBERSHIP = "membership"
    COUNTER = "counter"


class VerdictKind(Enum):
    EQUIVALENT = "equivalent"
    COUNTEREXAMPLE = "counterexample"
    PRESUMED_EQUIVALENT = "presumed-equivalent"


class EquivalenceVerdict:
    """
    Answer to an equivalence query.

    Attributes:
        kind: VerdictKind
        word: The counterexample (COUNTEREXAMPLE only)
        mismatch: MismatchKind of the counterexample
        bound: Search limits that were hit (PRESUMED_EQUIVALENT only)
    """

    def __init__(self, kind: VerdictKind, word: Optional[Word] = None,
                 mismatch: Optional[MismatchKind] = None, bound: Optional[str] = None):
        self.kind = kind
        self.word = word
        self.mismatch = mismatch
        self.bound = bound

    @classmethod
    def equivalent(cls) -> "EquivalenceVerdict":
        return cls(VerdictKind.EQUIVALENT)

    @classmethod
    def counterexample(cls, word: Word, mismatch: MismatchKind) -> "EquivalenceVerdict":
        return cls(VerdictKind.COUNTEREXAMPLE, word=word, mismatch=mismatch)

    @classmethod
    def presumed(cls, bound: str) -> "EquivalenceVerdict":
        return cls(VerdictKind.PRESUMED_EQUIVALENT, bound=bound)

    @property
    def is_counterexample(self) -> bool:
        return self.kind is VerdictKind.COUNTEREXAMPLE

    def __str__(self) -> str:
        if self.kind is VerdictKind.COUNTEREXAMPLE:
            return f"counterexample {format_word(self.word)} {self.mismatch.value}"
        if self.kind is VerdictKind.PRESUMED_EQUIVALENT:
            return f"presumed-equivalent (bound {self.bound})"
        return "equivalent"

    __repr__ = __str__


class QueryStats:
    """Number of queries of each type answered so far."""

    def __init__(self):
        self.mq = 0
        self.cv = 0
        self.msq = 0

    def as_dict(self) -> Dict[str, int]:
        return {"mq": self.mq, "cv": self.cv, "msq": self.msq}

    def reset(self) -> None:
        self.mq = self.cv = self.msq = 0

    def __repr__(self) -> str:
        return f"QueryStats(mq={self.mq}, cv={self.cv}, msq={self.msq})"


class TeacherLimits:
    """
    Bounds of the equivalence search.

    Attributes:
        max_cex_len: Longest word examined
        max_configurations: Largest number of product configurations visited
        counter_cutoff: Counter value above which configurations are not expanded;
            None picks |Q_target|·|Q_hyp| + |Q_target| + |Q_hyp|
    """

    def __init__(self, max_cex_len: int = 256, max_configurations: int = 500000,
                 counter_cutoff: Optional[int] = None):
        if max_cex_len < 0 or max_configurations < 1:
            raise InputError("Teacher limits must be positive")
        if counter_cutoff is not None and counter_cutoff < 1:
            raise InputError("Counter cutoff must be at least 1")
        self.max_cex_len = max_cex_len
        self.max_configurations = max_configurations
        self.counter_cutoff = counter_cutoff

    def cutoff_for(self, a: Droca, b: Droca) -> int:
        if self.counter_cutoff is not None:
            return self.counter_cutoff
        na, nb = a.num_states, b.num_states
        return na * nb + na + nb


def _observe(machine: Droca, configuration: Optional[Configuration]) -> Tuple[bool, Optional[int]]:
    if configuration is None:
        return False, None
    return configuration.state in machine.finals, configuration.counter


def _visibly_synchronized(a: Droca, b: Droca) -> bool:
    return (isinstance(a, Voca) and isinstance(b, Voca) and a.partition == b.partition
            and a.is_complete() and b.is_complete())


def _compare(a: Tuple[bool, Optional[int]], b: Tuple[bool, Optional[int]]) -> Optional[MismatchKind]:
    if a[0] != b[0]:
        return MismatchKind.MEMBERSHIP
    if a[1] != b[1]:
        return MismatchKind.COUNTER
    return None


def synchronous_product_search(a: Droca, b: Droca, counter_limit: int, max_len: int,
                               max_configurations: int) -> Tuple[Optional[Tuple[Word, MismatchKind]], bool]:
    """
    Search the synchronized product of two machines for the llex-smallest word on
    which they differ in acceptance or counter value.

    Configurations (p, q, n) are deduplicated and letters expanded in alphabet
    order, so the first mismatch found is the smallest within the bounds. Words on
    which both machines are stuck, and all their extensions, agree.

    Args:
        a: First machine
        b: Second machine, over the same alphabet
        counter_limit: Configurations with a larger counter are checked but not expanded
        max_len: Words longer than this are not examined
        max_configurations: Stop after visiting this many configurations

    Returns:
        (mismatch, closed): mismatch is (word, kind) or None; closed is True when
        the reachable product was explored without hitting any bound

    Raises:
        InputError: the alphabets differ
        SynchronizationError: two complete vocas over one partition disagree on
            whether a run is stuck
    """
    if a.alphabet != b.alphabet:
        raise InputError("Machines have different alphabets")
    synchronized = _visibly_synchronized(a, b)

    start_a = Configuration(a.initial, 0)
    start_b = Configuration(b.initial, 0)
    kind = _compare(_observe(a, start_a), _observe(b, start_b))
    if kind is not None:
        return ((), kind), True

    letters = a.alphabet.letters
    start = (start_a.state, start_b.state, 0)
    visited: Set[Tuple[int, int, int]] = {start}
    queue: Deque[Tuple[Tuple[int, int, int], Word]] = deque([(start, ())])
    closed = True

    while queue:
        (p, q, n), word = queue.popleft()
        if len(word) >= max_len:
            closed = False
            continue
        for letter in letters:
            next_a = a.step(Configuration(p, n), letter)
            next_b = b.step(Configuration(q, n), letter)
            if next_a is None and next_b is None:
                continue
            extended = word + (letter,)
            kind = _compare(_observe(a, next_a), _observe(b, next_b))
            if kind is not None:
                if synchronized and (next_a is None or next_b is None):
                    raise SynchronizationError(
                        f"Only one machine is stuck after {format_word(extended)}")
                return (extended, kind), closed
            key = (next_a.state, next_b.state, next_a.counter)
            if key in visited:
                continue
            if next_a.counter > counter_limit:
                closed = False
                continue
            if len(visited) >= max_configurations:
                logger.debug(f"Product search stopped after {len(visited)} configurations")
                return None, False
            visited.add(key)
            queue.append((key, extended))

    return None, closed


def brute_force_equiv(a: Droca, b: Droca, max_len: int) -> Optional[Tuple[Word, MismatchKind]]:
    """
    Compare two machines on every word up to ``max_len`` letters, in llex order.

    A stuck run counts as rejecting with no counter value; two stuck runs agree.

    Returns:
        The first (word, kind) mismatch, or None
    """
    if a.alphabet != b.alphabet:
        raise InputError("Machines have different alphabets")

    start = (Configuration(a.initial, 0), Configuration(b.initial, 0))
    kind = _compare(_observe(a, start[0]), _observe(b, start[1]))
    if kind is not None:
        return (), kind

    level = [((), start[0], start[1])]
    for _ in range(max_len):
        next_level = []
        for word, ca, cb in level:
            for letter in a.alphabet:
                na = a.step(ca, letter) if ca is not None else None
                nb = b.step(cb, letter) if cb is not None else None
                if na is None and nb is None:
                    continue
                extended = word + (letter,)
                kind = _compare(_observe(a, na), _observe(b, nb))
                if kind is not None:
                    return extended, kind
                next_level.append((extended, na, nb))
        level = next_level
    return None


class Teacher:
    """Answers queries about a hidden complete target machine."""

    def __init__(self, target: Droca, limits: Optional[TeacherLimits] = None):
        """
        Initialize the teacher.

        Args:
            target: Complete Droca or Voca
            limits: Equivalence search bounds

        Raises:
            InputError: the target is not complete
        """
        if not target.is_complete():
            raise InputError(f"Teacher target {target!r} is not complete")
        self.target = target
        self.limits = limits or TeacherLimits()
        self.stats = QueryStats()

    @property
    def alphabet(self):
        return self.target.alphabet

    @property
    def partition(self):
        return getattr(self.target, "partition", None)

    def mq(self, word: Word) -> int:
        """1 if the target accepts the word, else 0."""
        self.stats.mq += 1
        return 1 if self.target.accepts(word) else 0

    def cv(self, word: Word) -> Optional[int]:
        """Counter value of the word in the target; None when the run is stuck."""
        self.stats.cv += 1
        return self.target.counter_effect(word)

    def msq(self, hypothesis: Droca) -> EquivalenceVerdict:
        """
        Minimal synchronous-equivalence query.

        Returns:
            EquivalenceVerdict: EQUIVALENT when the product search closed without a
            mismatch, PRESUMED_EQUIVALENT when it hit a bound, else the llex-smallest
            counterexample

        Raises:
            InputError: the hypothesis uses another alphabet
        """
        self.stats.msq += 1
        limit = self.limits.cutoff_for(self.target, hypothesis)
        found, closed = synchronous_product_search(
            self.target, hypothesis, limit, self.limits.max_cex_len, self.limits.max_configurations)

        if found is not None:
            verdict = EquivalenceVerdict.counterexample(*found)
        elif closed:
            verdict = EquivalenceVerdict.equivalent()
        else:
            verdict = EquivalenceVerdict.presumed(
                f"counter {limit}, length {self.limits.max_cex_len}, "
                f"configurations {self.limits.max_configurations}")
        logger.debug(f"MSQ #{self.stats.msq}: {verdict}")
        return verdict

    def reset_stats(self) -> None:
        self.stats.reset()
