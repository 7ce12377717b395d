"""
Length-lexicographic order and prefix closure.
"""

from enum import IntEnum
from typing import Iterable, List, Sequence, Set, Tuple

from ocalearn.automata.alphabet import Alphabet, Letter, Word


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def llex_compare(u: Sequence[Letter], v: Sequence[Letter], alphabet: Alphabet) -> Ordering:
    """
    Compare two words: shorter first, equal lengths by the alphabet order.

    Raises:
        InputError: a letter outside the alphabet
    """
    ku, kv = alphabet.word_key(u), alphabet.word_key(v)
    if ku < kv:
        return Ordering.LESS
    if ku > kv:
        return Ordering.GREATER
    return Ordering.EQUAL


def llex_pair_compare(first: Tuple[Sequence[Letter], Sequence[Letter]],
                      second: Tuple[Sequence[Letter], Sequence[Letter]],
                      alphabet: Alphabet) -> Ordering:
    """Compare word pairs componentwise under llex."""
    head = llex_compare(first[0], second[0], alphabet)
    if head is not Ordering.EQUAL:
        return head
    return llex_compare(first[1], second[1], alphabet)


def llex_sorted(words: Iterable[Sequence[Letter]], alphabet: Alphabet) -> List[Word]:
    return sorted((tuple(w) for w in words), key=alphabet.word_key)


def prefixes(words: Iterable[Sequence[Letter]]) -> Set[Word]:
    """
    All prefixes of the given words, the words themselves and the empty word included.
    The empty collection has no prefixes.
    """
    result: Set[Word] = set()
    for word in words:
        word = tuple(word)
        for end in range(len(word), -1, -1):
            prefix = word[:end]
            if prefix in result:
                break
            result.add(prefix)
    return result
