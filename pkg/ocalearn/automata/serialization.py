"""
Plain-text automaton format.

    droca                      header: droca, voca or dfa
    alphabet: a b              letter order defines the llex tie-breaker
    call: a                    voca only (also ret: and int:)
    ret: b
    int:
    states: 3                  ids 0..n-1
    initial: 0
    finals: 2
    0 a z -> 0 +1              z = zero counter, p = positive counter
    0 b p -> 1 -1

DFA transition lines omit the z/p field and the action. Blank lines and text
after ``#`` are ignored.
"""

import logging
from typing import Dict, List, Optional, Tuple, Union

from ocalearn.automata.alphabet import Alphabet, Letter
from ocalearn.automata.machines import Dfa, Droca, LetterKind, Voca
from ocalearn.errors import InputError

logger = logging.getLogger(__name__)

Machine = Union[Dfa, Droca]

HEADERS = ("droca", "voca", "dfa")
_ZERO_FLAGS = {"z": True, "p": False}


def _check_letter(letter: Letter) -> str:
    if not isinstance(letter, str) or not letter or any(ch.isspace() or ch == "#" for ch in letter):
        raise InputError(f"Letter {letter!r} cannot be written in the text format")
    return letter


def _format_action(action: int) -> str:
    return f"{int(action):+d}" if action else "0"


def encode_automaton(machine: Machine) -> str:
    """
    Encode a machine in the text format.

    States are renumbered 0..n-1 in increasing id order, so machines whose ids are
    already 0..n-1 round-trip exactly.

    Args:
        machine: Dfa, Droca or Voca over string letters

    Returns:
        str: The encoded document, newline-terminated

    Raises:
        InputError: a letter that the format cannot carry
    """
    letters = [_check_letter(letter) for letter in machine.alphabet]
    number = {state: index for index, state in enumerate(sorted(machine.states))}

    lines = [machine.kind, "alphabet: " + " ".join(letters)]
    if isinstance(machine, Voca):
        for kind in LetterKind:
            members = " ".join(machine.letters_of(kind))
            lines.append(f"{kind.value}: {members}".rstrip())
    lines.append(f"states: {len(number)}")
    lines.append(f"initial: {number[machine.initial]}")
    lines.append("finals: " + " ".join(str(number[q]) for q in sorted(machine.finals)))
    lines[-1] = lines[-1].rstrip()

    if isinstance(machine, Dfa):
        for source, letter, target in machine.transitions():
            lines.append(f"{number[source]} {letter} -> {number[target]}")
    else:
        for source, letter, zero, target, action in machine.transitions():
            flag = "z" if zero else "p"
            lines.append(f"{number[source]} {letter} {flag} -> {number[target]} {_format_action(action)}")

    return "\n".join(lines) + "\n"


class _Reader:
    """Line-oriented parser state for decode_automaton."""

    def __init__(self, text: str):
        self.lines: List[Tuple[int, str]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.lines.append((number, line))
        self.position = 0

    def error(self, message: str, line_number: Optional[int] = None) -> InputError:
        if line_number is None and self.position < len(self.lines):
            line_number = self.lines[self.position][0]
        where = f" (line {line_number})" if line_number is not None else ""
        return InputError(f"Malformed automaton{where}: {message}")

    def next_line(self) -> Tuple[int, str]:
        if self.position >= len(self.lines):
            raise self.error("unexpected end of document")
        item = self.lines[self.position]
        self.position += 1
        return item

    def field(self, name: str) -> Tuple[int, List[str]]:
        number, line = self.next_line()
        key, sep, value = line.partition(":")
        if not sep or key.strip() != name:
            raise self.error(f"expected '{name}:'", number)
        return number, value.split()

    def state(self, token: str, count: int, line_number: int) -> int:
        try:
            state = int(token)
        except ValueError:
            raise self.error(f"state id {token!r} is not an integer", line_number) from None
        if not 0 <= state < count:
            raise self.error(f"state id {state} outside 0..{count - 1}", line_number)
        return state


def decode_automaton(text: str) -> Machine:
    """
    Decode a machine from the text format.

    Args:
        text: The document

    Returns:
        Dfa, Droca or Voca according to the header

    Raises:
        InputError: malformed text, dangling state ids, a zero-counter decrement,
            or voca actions disagreeing with the partition
    """
    reader = _Reader(text)
    number, header = reader.next_line()
    if header not in HEADERS:
        raise reader.error(f"unknown header {header!r}", number)

    _, letters = reader.field("alphabet")
    alphabet = Alphabet(letters)

    partition: Dict[str, LetterKind] = {}
    if header == "voca":
        for kind in LetterKind:
            number, members = reader.field(kind.value)
            for letter in members:
                if letter in partition:
                    raise reader.error(f"letter {letter!r} classified twice", number)
                partition[letter] = kind

    number, count_tokens = reader.field("states")
    if len(count_tokens) != 1 or not count_tokens[0].isdigit() or int(count_tokens[0]) < 1:
        raise reader.error("'states:' needs one positive integer", number)
    count = int(count_tokens[0])

    number, initial_tokens = reader.field("initial")
    if len(initial_tokens) != 1:
        raise reader.error("'initial:' needs exactly one state", number)
    initial = reader.state(initial_tokens[0], count, number)

    number, final_tokens = reader.field("finals")
    finals = [reader.state(token, count, number) for token in final_tokens]

    delta: Dict[Tuple[int, str], int] = {}
    delta0: Dict[Tuple[int, str], Tuple[int, int]] = {}
    delta1: Dict[Tuple[int, str], Tuple[int, int]] = {}

    while reader.position < len(reader.lines):
        number, line = reader.next_line()
        left, arrow, right = line.partition("->")
        if not arrow:
            raise reader.error("transition lines need '->'", number)
        lhs, rhs = left.split(), right.split()

        if header == "dfa":
            if len(lhs) != 2 or len(rhs) != 1:
                raise reader.error("dfa transitions read 'SOURCE LETTER -> TARGET'", number)
            key = (reader.state(lhs[0], count, number), lhs[1])
            if key in delta:
                raise reader.error(f"duplicate transition for {lhs[0]} {lhs[1]}", number)
            delta[key] = reader.state(rhs[0], count, number)
            continue

        if len(lhs) != 3 or len(rhs) != 2 or lhs[2] not in _ZERO_FLAGS:
            raise reader.error("transitions read 'SOURCE LETTER z|p -> TARGET ACTION'", number)
        try:
            action = int(rhs[1])
        except ValueError:
            raise reader.error(f"action {rhs[1]!r} is not -1, 0 or +1", number) from None
        target = reader.state(rhs[0], count, number)
        key = (reader.state(lhs[0], count, number), lhs[1])
        table = delta0 if _ZERO_FLAGS[lhs[2]] else delta1
        if key in table:
            raise reader.error(f"duplicate transition for {lhs[0]} {lhs[1]} {lhs[2]}", number)
        table[key] = (target, action)

    states = range(count)
    if header == "dfa":
        return Dfa(states, alphabet, delta, initial, finals)
    if header == "voca":
        return Voca(states, alphabet, initial, delta0, delta1, finals, partition)
    return Droca(states, alphabet, initial, delta0, delta1, finals)


def load_automaton(path: str) -> Machine:
    """
    Read a machine from a file.

    Raises:
        InputError: unreadable or malformed file
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"Cannot read automaton file {path}: {e}") from e
    machine = decode_automaton(text)
    logger.debug(f"Loaded {machine!r} from {path}")
    return machine


def save_automaton(machine: Machine, path: str) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(encode_automaton(machine))
    logger.debug(f"Saved {machine!r} to {path}")
