"""
Passive-learning input: sample sets and counter maps, plus their file formats.

Sample files hold one ``+<TAB>word`` or ``-<TAB>word`` record per line; counter
files hold one ``word<TAB>value`` line per prefix. The empty word is ``@eps``.
"""

import logging
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence,
                    Set)

from ocalearn.automata.alphabet import Alphabet, Letter, Word, format_word, parse_word
from ocalearn.errors import InconsistentSampleError, InputError
from ocalearn.samples.order import prefixes

logger = logging.getLogger(__name__)


def _default_key(word: Word):
    return len(word), tuple(str(letter) for letter in word)


class SampleSet:
    """Disjoint sets of positive and negative words."""

    def __init__(self, positives: Iterable[Sequence[Letter]] = (),
                 negatives: Iterable[Sequence[Letter]] = ()):
        """
        Initialize the sample.

        Raises:
            InconsistentSampleError: a word is both positive and negative
        """
        self.positives: FrozenSet[Word] = frozenset(tuple(w) for w in positives)
        self.negatives: FrozenSet[Word] = frozenset(tuple(w) for w in negatives)
        overlap = self.positives & self.negatives
        if overlap:
            shown = ", ".join(format_word(w) for w in sorted(overlap, key=_default_key)[:5])
            raise InconsistentSampleError(f"Words are both positive and negative: {shown}")

    @property
    def words(self) -> FrozenSet[Word]:
        return self.positives | self.negatives

    def prefixes(self) -> Set[Word]:
        return prefixes(self.words)

    def letters(self) -> Set[Letter]:
        return {letter for word in self.words for letter in word}

    def check_alphabet(self, alphabet: Alphabet) -> None:
        for word in self.words:
            alphabet.check_word(word)

    def __len__(self) -> int:
        return len(self.positives) + len(self.negatives)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SampleSet)
                and self.positives == other.positives
                and self.negatives == other.negatives)

    def __repr__(self) -> str:
        return f"SampleSet(+{len(self.positives)}, -{len(self.negatives)})"


class CounterMap(Mapping[Word, int]):
    """
    Counter values of words, as read from a target machine.

    Values are absolute counters: ce(ε) = 0, consecutive prefixes differ by at most
    one, and a decrement only happens from a positive value.
    """

    def __init__(self, values: Mapping[Sequence[Letter], int]):
        """
        Initialize and validate the map.

        Raises:
            InputError: negative values, ce(ε) != 0, or an invalid step between a
                word and its one-letter extension
        """
        self._values: Dict[Word, int] = {}
        for word, value in values.items():
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InputError(f"Counter value {value!r} of {format_word(tuple(word))} "
                                 f"is not a non-negative integer")
            self._values[tuple(word)] = int(value)

        if self._values.get((), 0) != 0:
            raise InputError(f"Counter value of the empty word must be 0, got {self._values[()]}")
        for word, value in self._values.items():
            if not word:
                continue
            parent = self._values.get(word[:-1])
            if parent is None:
                continue
            step = value - parent
            if abs(step) > 1:
                raise InputError(f"Counter jumps from {parent} to {value} on {format_word(word)}")
            if step == -1 and parent == 0:
                raise InputError(f"Counter decrements at zero on {format_word(word)}")

    def validate_for(self, sample: SampleSet) -> None:
        """
        Raises:
            InputError: a prefix of a sample word has no counter value
        """
        missing = [w for w in sample.prefixes() if w not in self._values]
        if missing:
            shown = ", ".join(format_word(w) for w in sorted(missing, key=_default_key)[:5])
            raise InputError(f"Counter map has no value for prefixes: {shown}")

    def __getitem__(self, word: Sequence[Letter]) -> int:
        return self._values[tuple(word)]

    def __contains__(self, word: object) -> bool:
        try:
            return tuple(word) in self._values
        except TypeError:
            return False

    def __iter__(self) -> Iterator[Word]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return f"CounterMap({len(self._values)} words)"


def _data_lines(path: str) -> Iterator[tuple]:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def read_samples(path: str, alphabet: Optional[Alphabet] = None) -> SampleSet:
    """
    Read a sample file.

    Args:
        path: File of ``+<TAB>word`` / ``-<TAB>word`` lines
        alphabet: Validates (and disambiguates) the words when given

    Returns:
        SampleSet: The sample

    Raises:
        InputError: malformed line or foreign letter
        InconsistentSampleError: a word listed with both signs
    """
    positives: List[Word] = []
    negatives: List[Word] = []
    for number, line in _data_lines(path):
        sign, rest = line[0], line[1:].strip()
        if sign not in "+-" or not rest:
            raise InputError(f"{path}:{number}: expected '+<TAB>word' or '-<TAB>word'")
        (positives if sign == "+" else negatives).append(parse_word(rest, alphabet))
    sample = SampleSet(positives, negatives)
    logger.debug(f"Read {sample!r} from {path}")
    return sample


def read_counter_map(path: str, alphabet: Optional[Alphabet] = None) -> CounterMap:
    """
    Read a counter file of ``word<TAB>value`` lines.

    Raises:
        InputError: malformed line, duplicate word or invalid counter values
    """
    values: Dict[Word, int] = {}
    for number, line in _data_lines(path):
        parts = line.rsplit(None, 1)
        if len(parts) != 2:
            raise InputError(f"{path}:{number}: expected 'word<TAB>value'")
        try:
            value = int(parts[1])
        except ValueError:
            raise InputError(f"{path}:{number}: counter value {parts[1]!r} is not an integer") from None
        word = parse_word(parts[0], alphabet)
        if word in values:
            raise InputError(f"{path}:{number}: duplicate word {format_word(word)}")
        values[word] = value
    return CounterMap(values)


def write_samples(sample: SampleSet, path: str, alphabet: Optional[Alphabet] = None) -> None:
    key = alphabet.word_key if alphabet is not None else _default_key
    with open(path, 'w', encoding='utf-8') as f:
        for word in sorted(sample.words, key=key):
            sign = "+" if word in sample.positives else "-"
            f.write(f"{sign}\t{format_word(word)}\n")


def write_counter_map(ce: Mapping[Word, int], path: str, alphabet: Optional[Alphabet] = None) -> None:
    key = alphabet.word_key if alphabet is not None else _default_key
    with open(path, 'w', encoding='utf-8') as f:
        for word in sorted(ce, key=key):
            f.write(f"{format_word(word)}\t{ce[word]}\n")
