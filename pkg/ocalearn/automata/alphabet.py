"""
Ordered alphabets and the textual word notation.

A word is a tuple of letters; the empty word is ``()``. Letters are any hashable
values: plain strings for input alphabets, annotated letters and action tuples
for the enriched alphabets built during passive learning.
"""

from typing import Dict, Hashable, Iterable, Iterator, Optional, Sequence, Tuple

from ocalearn.errors import InputError

Letter = Hashable
Word = Tuple[Letter, ...]

EPSILON_TOKEN = "@eps"


class Alphabet:
    """A finite, non-empty, totally ordered set of letters."""

    def __init__(self, letters: Iterable[Letter]):
        """
        Initialize the alphabet.

        Args:
            letters: Letters in their order; the order is the tie-breaker of llex

        Raises:
            InputError: empty alphabet or duplicate letters
        """
        self._letters: Tuple[Letter, ...] = tuple(letters)
        if not self._letters:
            raise InputError("Alphabet must not be empty")
        self._rank: Dict[Letter, int] = {}
        for index, letter in enumerate(self._letters):
            if letter in self._rank:
                raise InputError(f"Duplicate letter {letter!r} in alphabet")
            self._rank[letter] = index

    @property
    def letters(self) -> Tuple[Letter, ...]:
        return self._letters

    def rank(self, letter: Letter) -> int:
        try:
            return self._rank[letter]
        except (KeyError, TypeError):
            raise InputError(f"Letter {letter!r} is not in the alphabet") from None

    def check_word(self, word: Iterable[Letter]) -> Word:
        """
        Validate a word and return it as a tuple.

        Raises:
            InputError: a letter outside the alphabet
        """
        word = tuple(word)
        for letter in word:
            if letter not in self._rank:
                raise InputError(f"Letter {letter!r} of word {format_word(word)} is not in the alphabet")
        return word

    def word_key(self, word: Sequence[Letter]) -> Tuple[int, Tuple[int, ...]]:
        """Sort key realising the length-lexicographic order."""
        return len(word), tuple(self.rank(letter) for letter in word)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self._letters)

    def __len__(self) -> int:
        return len(self._letters)

    def __contains__(self, letter: object) -> bool:
        try:
            return letter in self._rank
        except TypeError:
            return False

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self._letters == other._letters

    def __hash__(self) -> int:
        return hash(self._letters)

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(str(letter) for letter in self._letters)})"


def format_word(word: Sequence[Letter]) -> str:
    """
    Render a word in the file/CLI notation.

    Single-character letters are concatenated, anything else is space-separated;
    the empty word is ``@eps``.
    """
    if not word:
        return EPSILON_TOKEN
    parts = [str(letter) for letter in word]
    if all(len(part) == 1 for part in parts):
        return "".join(parts)
    return " ".join(parts)


def parse_word(text: str, alphabet: Optional[Alphabet] = None) -> Word:
    """
    Parse a word written in the file/CLI notation.

    Args:
        text: ``@eps``, space-separated letters, or concatenated one-character letters
        alphabet: When given, the word is validated against it

    Returns:
        Word: The parsed word

    Raises:
        InputError: a letter outside ``alphabet``
    """
    text = text.strip()
    if text == EPSILON_TOKEN or not text:
        return ()
    if any(ch.isspace() for ch in text):
        word: Word = tuple(text.split())
    elif alphabet is not None and text in alphabet and not all(
            len(str(letter)) == 1 for letter in alphabet):
        word = (text,)
    else:
        word = tuple(text)
    if alphabet is not None:
        word = alphabet.check_word(word)
    return word
