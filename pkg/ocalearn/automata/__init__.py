"""
Machine models, run semantics and file formats.
"""

from ocalearn.automata.alphabet import Alphabet, Letter, Word, format_word, parse_word
from ocalearn.automata.machines import (Configuration, CounterAction, Dfa, Droca, LetterKind,
                                        RunResult, Voca, complete_with_sink, voca_letter_effect)
from ocalearn.automata.serialization import (decode_automaton, encode_automaton, load_automaton,
                                             save_automaton)
from ocalearn.automata.dot import to_dot

__all__ = [
    'Alphabet',
    'Letter',
    'Word',
    'format_word',
    'parse_word',
    'Configuration',
    'CounterAction',
    'Dfa',
    'Droca',
    'LetterKind',
    'RunResult',
    'Voca',
    'complete_with_sink',
    'voca_letter_effect',
    'decode_automaton',
    'encode_automaton',
    'load_automaton',
    'save_automaton',
    'to_dot',
]
