"""
Observation table of the active learner.

Rows are indexed by a prefix-closed set R and its one-letter extensions RΣ,
columns by a suffix-closed set C. A cell holds the membership of ``r·c`` and, for
general counter machines, the action tuple of ``r·c``. Every row also carries the
counter value of its word. Answers are cached, so no word is asked twice.
"""

import logging
from enum import Enum
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Set, Tuple

from ocalearn.automata.alphabet import Alphabet, Letter, Word, format_word
from ocalearn.automata.machines import LetterKind, voca_letter_effect
from ocalearn.errors import InputError
from ocalearn.passive.opni import ActionTuple, sign_of
from ocalearn.samples.order import prefixes
from ocalearn.samples.sample_set import CounterMap, SampleSet

logger = logging.getLogger(__name__)


class TableMode(Enum):
    DROCA = "droca"
    VOCA = "voca"


class RowSignature(NamedTuple):
    """Counter value of the row word and one cell per column, in column order."""
    ce: Optional[int]
    cells: tuple


class InconsistencyWitness(NamedTuple):
    """Rows r and s look alike but differ in column ``suffix`` after ``letter``."""
    r: Word
    s: Word
    letter: Letter
    suffix: Word


def _cells_match(first: RowSignature, second: RowSignature, wildcard: bool) -> bool:
    if first.ce != second.ce:
        return False
    if not wildcard:
        return first.cells == second.cells
    return all(x is None or y is None or x == y for x, y in zip(first.cells, second.cells))


class ObservationTable:
    """
    The table (R, C, Memb, ce, Act).

    In VOCA mode there is no Act, counter values come from the letter classes
    without asking the teacher, and words whose counter would go negative hold
    None in both memb and ce; such cells match anything when rows are compared.
    """

    def __init__(self, alphabet: Alphabet, mode: TableMode = TableMode.DROCA,
                 partition: Optional[Mapping[Letter, LetterKind]] = None):
        """
        Initialize a table with R = C = {ε}.

        Raises:
            InputError: VOCA mode without a partition
        """
        if mode is TableMode.VOCA and partition is None:
            raise InputError("VOCA tables need the call/ret/int partition")
        self.alphabet = alphabet
        self.mode = mode
        self.partition = dict(partition) if partition is not None else None

        self.rows: List[Word] = [()]
        self._row_set: Set[Word] = {()}
        self.columns: List[Word] = [()]
        self._column_set: Set[Word] = {()}
        self._extensions: Optional[List[Word]] = None
        self._extension_set: Set[Word] = set()

        self.memb: Dict[Word, Optional[int]] = {}
        self.ce: Dict[Word, Optional[int]] = {}
        self.act: Dict[Word, ActionTuple] = {}

    # Structure

    def _rebuild_extensions(self) -> None:
        seen: Set[Word] = set()
        extensions = []
        for r in self.rows:
            for letter in self.alphabet:
                w = r + (letter,)
                if w not in self._row_set and w not in seen:
                    seen.add(w)
                    extensions.append(w)
        self._extensions = extensions
        self._extension_set = seen

    @property
    def extensions(self) -> List[Word]:
        """RΣ without R, in row order then letter order."""
        if self._extensions is None:
            self._rebuild_extensions()
        return self._extensions

    @property
    def extension_set(self) -> Set[Word]:
        if self._extensions is None:
            self._rebuild_extensions()
        return self._extension_set

    def all_rows(self) -> List[Word]:
        return self.rows + self.extensions

    @property
    def num_rows(self) -> int:
        return len(self.rows) + len(self.extensions)

    @property
    def num_cols(self) -> int:
        return len(self.columns)

    def add_row(self, word: Iterable[Letter]) -> int:
        """Add a word and all its prefixes to R. Returns the number of new rows."""
        word = self.alphabet.check_word(word)
        added = 0
        for end in range(len(word) + 1):
            prefix = word[:end]
            if prefix not in self._row_set:
                self._row_set.add(prefix)
                self.rows.append(prefix)
                added += 1
        if added:
            self._extensions = None
        return added

    def add_column(self, suffix: Iterable[Letter]) -> int:
        """Add a word and all its suffixes to C. Returns the number of new columns."""
        suffix = self.alphabet.check_word(suffix)
        added = 0
        for start in range(len(suffix), -1, -1):
            tail = suffix[start:]
            if tail not in self._column_set:
                self._column_set.add(tail)
                self.columns.append(tail)
                added += 1
        return added

    # Queries

    def counter_value(self, word: Word, teacher) -> Optional[int]:
        if word in self.ce:
            return self.ce[word]
        if self.mode is TableMode.VOCA:
            value: Optional[int] = 0
            for letter in word:
                value += voca_letter_effect(self.partition, letter)
                if value < 0:
                    value = None
                    break
        else:
            value = teacher.cv(word)
        self.ce[word] = value
        return value

    def membership(self, word: Word, teacher) -> Optional[int]:
        if word in self.memb:
            return self.memb[word]
        if self.mode is TableMode.VOCA and self.counter_value(word, teacher) is None:
            value = None
        else:
            value = teacher.mq(word)
        self.memb[word] = value
        return value

    def action(self, word: Word, teacher) -> ActionTuple:
        if word in self.act:
            return self.act[word]
        base = self.counter_value(word, teacher)
        effects = []
        for letter in self.alphabet:
            after = self.counter_value(word + (letter,), teacher)
            effects.append(None if after is None or base is None else after - base)
        value = ActionTuple(sign_of(base or 0), effects, self.alphabet)
        self.act[word] = value
        return value

    def fill(self, teacher) -> None:
        """Ask for every missing entry of R ∪ RΣ."""
        for r in self.all_rows():
            self.counter_value(r, teacher)
            for c in self.columns:
                w = r + c
                self.membership(w, teacher)
                if self.mode is TableMode.DROCA:
                    self.action(w, teacher)

    # Rows

    def _cell(self, word: Word):
        if word not in self.memb:
            raise InputError(f"Cell {format_word(word)} has not been filled")
        if self.mode is TableMode.VOCA:
            return self.memb[word]
        return self.memb[word], self.act[word]

    def row(self, r: Word) -> RowSignature:
        """
        Signature of a row of R ∪ RΣ.

        Raises:
            InputError: r is not a row, or the table has not been filled
        """
        r = tuple(r)
        if r not in self._row_set and r not in self.extension_set:
            raise InputError(f"{format_word(r)} is not a row of the table")
        if r not in self.ce:
            raise InputError(f"Row {format_word(r)} has not been filled")
        return RowSignature(self.ce[r], tuple(self._cell(r + c) for c in self.columns))

    def is_d_closed(self, d: int) -> Optional[Word]:
        """
        None if every extension row with counter value at most d equals some R row,
        else the first extension row that does not.
        """
        wildcard = self.mode is TableMode.VOCA
        r_rows = [self.row(r) for r in self.rows]
        r_set = set(r_rows)
        for w in self.extensions:
            signature = self.row(w)
            if signature.ce is None or signature.ce > d:
                continue
            if signature in r_set:
                continue
            if wildcard and any(_cells_match(signature, other, True) for other in r_rows):
                continue
            return w
        return None

    def is_d_consistent(self, d: int) -> Optional[InconsistencyWitness]:
        """
        None if any two R rows with equal signatures and counter value at most d
        also agree on every one-letter extension, else the first witness.
        """
        wildcard = self.mode is TableMode.VOCA
        candidates = [(r, self.row(r)) for r in self.rows]
        candidates = [(r, sig) for r, sig in candidates if sig.ce is not None and sig.ce <= d]

        if wildcard:
            pairs = ((candidates[i], candidates[j])
                     for i in range(len(candidates)) for j in range(i + 1, len(candidates))
                     if _cells_match(candidates[i][1], candidates[j][1], True))
        else:
            groups: Dict[RowSignature, List[Word]] = {}
            for r, sig in candidates:
                groups.setdefault(sig, []).append(r)
            pairs = (((members[0], None), (other, None))
                     for members in groups.values() for other in members[1:])

        for (r, _), (s, _) in pairs:
            for letter in self.alphabet:
                for c in self.columns:
                    x = self._cell(r + (letter,) + c)
                    y = self._cell(s + (letter,) + c)
                    if x == y or (wildcard and (x is None or y is None)):
                        continue
                    return InconsistencyWitness(r, s, letter, c)
        return None

    # Sample

    def extract_sample(self, teacher) -> Tuple[SampleSet, CounterMap]:
        """
        Positive and negative words of (R ∪ RΣ)·C by membership (unknown cells are
        left out), and the counter values of all their prefixes.
        """
        positives, negatives = [], []
        for r in self.all_rows():
            for c in self.columns:
                w = r + c
                value = self.memb.get(w)
                if value == 1:
                    positives.append(w)
                elif value == 0:
                    negatives.append(w)
        sample = SampleSet(positives, negatives)
        values = {}
        for w in prefixes(sample.words):
            value = self.counter_value(w, teacher)
            if value is None:
                raise InputError(f"Prefix {format_word(w)} of a sample word has no counter value")
            values[w] = value
        return sample, CounterMap(values)

    def __repr__(self) -> str:
        return (f"ObservationTable({self.mode.value}, rows={len(self.rows)}+{len(self.extensions)}, "
                f"cols={len(self.columns)})")
