"""
Machine models: DFA, deterministic real-time one-counter automata and their
visibly-pushdown restriction.

All machines are immutable after construction. Transition maps may be partial;
a run that reaches an undefined transition is stuck, and stuck runs reject.
"""

import logging
from collections import deque
from enum import Enum, IntEnum
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple,
                    Optional, Set, Tuple)

from ocalearn.automata.alphabet import Alphabet, Letter
from ocalearn.errors import InputError

logger = logging.getLogger(__name__)

State = int


class CounterAction(IntEnum):
    """Effect of a transition on the counter."""
    DECREMENT = -1
    NOOP = 0
    INCREMENT = 1

    def __str__(self) -> str:
        return f"{self.value:+d}" if self.value else "0"


class LetterKind(Enum):
    """Class of a letter in a visibly one-counter alphabet."""
    CALL = "call"
    RET = "ret"
    INT = "int"


_KIND_EFFECT = {
    LetterKind.CALL: CounterAction.INCREMENT,
    LetterKind.RET: CounterAction.DECREMENT,
    LetterKind.INT: CounterAction.NOOP,
}


class Configuration(NamedTuple):
    state: State
    counter: int


class RunResult:
    """
    Outcome of running a word.

    A completed run holds one configuration per prefix (``len(word) + 1`` of them).
    A stuck run holds the configurations up to the failing letter and the
    position of that letter in ``stuck_at``.
    """

    __slots__ = ("configurations", "stuck_at")

    def __init__(self, configurations: Tuple[Configuration, ...], stuck_at: Optional[int] = None):
        self.configurations = configurations
        self.stuck_at = stuck_at

    @property
    def completed(self) -> bool:
        return self.stuck_at is None

    @property
    def stuck(self) -> bool:
        return self.stuck_at is not None

    @property
    def final(self) -> Optional[Configuration]:
        """Last configuration of a completed run, None for a stuck one."""
        return self.configurations[-1] if self.stuck_at is None else None

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RunResult)
                and self.configurations == other.configurations
                and self.stuck_at == other.stuck_at)

    def __repr__(self) -> str:
        if self.stuck_at is None:
            return f"Completed({list(self.configurations)})"
        return f"Stuck(at={self.stuck_at})"


def voca_letter_effect(partition: Mapping[Letter, LetterKind], letter: Letter) -> CounterAction:
    """
    Counter action forced by a letter's class: call +1, ret -1, int 0.

    Raises:
        InputError: the letter is not classified
    """
    try:
        return _KIND_EFFECT[partition[letter]]
    except KeyError:
        raise InputError(f"Letter {letter!r} is not classified as call, ret or int") from None


class Dfa:
    """Deterministic finite automaton with a possibly partial transition map."""

    kind = "dfa"

    def __init__(self, states: Iterable[State], alphabet: Alphabet,
                 delta: Mapping[Tuple[State, Letter], State], initial: State,
                 finals: Iterable[State]):
        self.states: FrozenSet[State] = frozenset(states)
        self.alphabet = alphabet
        self.delta: Dict[Tuple[State, Letter], State] = dict(delta)
        self.initial = initial
        self.finals: FrozenSet[State] = frozenset(finals)

        if initial not in self.states:
            raise InputError(f"Initial state {initial} is not a state")
        if not self.finals <= self.states:
            raise InputError(f"Final states {sorted(self.finals - self.states)} are not states")
        for (source, letter), target in self.delta.items():
            if source not in self.states or target not in self.states:
                raise InputError(f"Transition {source} --{letter}--> {target} uses an unknown state")
            if letter not in alphabet:
                raise InputError(f"Transition on foreign letter {letter!r}")

    @property
    def num_states(self) -> int:
        return len(self.states)

    def reach(self, word: Iterable[Letter], start: Optional[State] = None) -> Optional[State]:
        """State reached on ``word`` from ``start`` (default initial), None if undefined."""
        state = self.initial if start is None else start
        for letter in word:
            state = self.delta.get((state, letter))
            if state is None:
                return None
        return state

    def accepts(self, word: Iterable[Letter]) -> bool:
        state = self.reach(word)
        return state is not None and state in self.finals

    def transitions(self) -> Iterator[Tuple[State, Letter, State]]:
        """Transitions sorted by source state and letter order."""
        for source, letter in sorted(self.delta, key=lambda k: (k[0], self.alphabet.rank(k[1]))):
            yield source, letter, self.delta[(source, letter)]

    def __eq__(self, other: object) -> bool:
        return (type(other) is type(self)
                and self.states == other.states
                and self.alphabet == other.alphabet
                and self.delta == other.delta
                and self.initial == other.initial
                and self.finals == other.finals)

    def __repr__(self) -> str:
        return (f"Dfa(states={self.num_states}, finals={sorted(self.finals)}, "
                f"transitions={len(self.delta)})")


class Droca:
    """
    Deterministic real-time one-counter automaton.

    ``delta0`` is used when the counter is zero and may only carry actions 0 and +1;
    ``delta1`` is used when the counter is positive.
    """

    kind = "droca"

    def __init__(self, states: Iterable[State], alphabet: Alphabet, initial: State,
                 delta0: Mapping[Tuple[State, Letter], Tuple[State, int]],
                 delta1: Mapping[Tuple[State, Letter], Tuple[State, int]],
                 finals: Iterable[State]):
        """
        Initialize and validate the machine.

        Args:
            states: State ids
            alphabet: Input alphabet
            initial: Initial state
            delta0: Zero-counter transitions, (state, letter) -> (state, action)
            delta1: Positive-counter transitions
            finals: Accepting states

        Raises:
            InputError: dangling state ids, foreign letters, or a decrement in delta0
        """
        self.states: FrozenSet[State] = frozenset(states)
        self.alphabet = alphabet
        self.initial = initial
        self.finals: FrozenSet[State] = frozenset(finals)
        self.delta0 = self._checked(delta0, zero=True)
        self.delta1 = self._checked(delta1, zero=False)

        if initial not in self.states:
            raise InputError(f"Initial state {initial} is not a state")
        if not self.finals <= self.states:
            raise InputError(f"Final states {sorted(self.finals - self.states)} are not states")

    def _checked(self, delta: Mapping[Tuple[State, Letter], Tuple[State, int]],
                 zero: bool) -> Dict[Tuple[State, Letter], Tuple[State, CounterAction]]:
        table: Dict[Tuple[State, Letter], Tuple[State, CounterAction]] = {}
        label = "=0" if zero else ">0"
        for (source, letter), (target, action) in delta.items():
            if source not in self.states or target not in self.states:
                raise InputError(f"Transition {source} --{letter}[{label}]--> {target} uses an unknown state")
            if letter not in self.alphabet:
                raise InputError(f"Transition on foreign letter {letter!r}")
            try:
                action = CounterAction(action)
            except ValueError:
                raise InputError(f"Counter action {action!r} is not -1, 0 or +1") from None
            if zero and action is CounterAction.DECREMENT:
                raise InputError(f"Zero-counter transition {source} --{letter}--> {target} decrements")
            table[(source, letter)] = (target, action)
        return table

    @property
    def num_states(self) -> int:
        return len(self.states)

    def step(self, configuration: Configuration, letter: Letter) -> Optional[Configuration]:
        """Successor configuration, None when the transition is undefined."""
        state, counter = configuration
        delta = self.delta1 if counter > 0 else self.delta0
        move = delta.get((state, letter))
        if move is None:
            return None
        return Configuration(move[0], counter + move[1])

    def run(self, word: Iterable[Letter]) -> RunResult:
        """
        Run a word from the initial configuration.

        Raises:
            InputError: a letter outside the alphabet
        """
        word = self.alphabet.check_word(word)
        current = Configuration(self.initial, 0)
        configurations = [current]
        for position, letter in enumerate(word):
            current = self.step(current, letter)
            if current is None:
                return RunResult(tuple(configurations), stuck_at=position)
            configurations.append(current)
        return RunResult(tuple(configurations))

    def accepts(self, word: Iterable[Letter]) -> bool:
        final = self.run(word).final
        return final is not None and final.state in self.finals

    def counter_effect(self, word: Iterable[Letter]) -> Optional[int]:
        final = self.run(word).final
        return None if final is None else final.counter

    def trace(self, word: Iterable[Letter]) -> List[Tuple[Optional[Letter], Configuration]]:
        """
        Step-by-step run: the initial configuration paired with None, then one
        (letter, configuration) pair per consumed letter. Stops where the run gets stuck.
        """
        word = tuple(word)
        result = self.run(word)
        steps: List[Tuple[Optional[Letter], Configuration]] = [(None, result.configurations[0])]
        for letter, configuration in zip(word, result.configurations[1:]):
            steps.append((letter, configuration))
        return steps

    def reachable_states(self, counter_cutoff: int) -> Set[State]:
        """
        Control states seen by a breadth-first search over configurations.

        Configurations whose counter exceeds ``counter_cutoff`` are recorded but not
        expanded, so the result under-approximates reachability for large counters.
        """
        if counter_cutoff < 1:
            raise InputError("Counter cutoff must be at least 1")
        start = Configuration(self.initial, 0)
        seen = {start}
        queue = deque([start])
        while queue:
            configuration = queue.popleft()
            if configuration.counter > counter_cutoff:
                continue
            for letter in self.alphabet:
                successor = self.step(configuration, letter)
                if successor is not None and successor not in seen:
                    seen.add(successor)
                    queue.append(successor)
        return {configuration.state for configuration in seen}

    def _needs_zero_transition(self, letter: Letter) -> bool:
        return True

    def is_complete(self) -> bool:
        for state in self.states:
            for letter in self.alphabet:
                if (state, letter) not in self.delta1:
                    return False
                if self._needs_zero_transition(letter) and (state, letter) not in self.delta0:
                    return False
        return True

    def transitions(self) -> Iterator[Tuple[State, Letter, bool, State, CounterAction]]:
        """
        All transitions as (source, letter, zero, target, action), ordered by source,
        letter, then zero-counter before positive-counter.
        """
        keys = set(self.delta0) | set(self.delta1)
        for source, letter in sorted(keys, key=lambda k: (k[0], self.alphabet.rank(k[1]))):
            for zero, delta in ((True, self.delta0), (False, self.delta1)):
                move = delta.get((source, letter))
                if move is not None:
                    yield source, letter, zero, move[0], move[1]

    def __eq__(self, other: object) -> bool:
        return (type(other) is type(self)
                and self.states == other.states
                and self.alphabet == other.alphabet
                and self.initial == other.initial
                and self.delta0 == other.delta0
                and self.delta1 == other.delta1
                and self.finals == other.finals)

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(states={self.num_states}, finals={sorted(self.finals)}, "
                f"delta0={len(self.delta0)}, delta1={len(self.delta1)})")


class Voca(Droca):
    """
    Visibly one-counter automaton: the counter action of every transition is fixed
    by the class of its letter, and there is no zero-counter transition on a
    return letter.
    """

    kind = "voca"

    def __init__(self, states: Iterable[State], alphabet: Alphabet, initial: State,
                 delta0: Mapping[Tuple[State, Letter], Tuple[State, int]],
                 delta1: Mapping[Tuple[State, Letter], Tuple[State, int]],
                 finals: Iterable[State], partition: Mapping[Letter, LetterKind]):
        super().__init__(states, alphabet, initial, delta0, delta1, finals)
        self.partition: Dict[Letter, LetterKind] = {}
        for letter, kind in partition.items():
            if letter not in alphabet:
                raise InputError(f"Partition classifies foreign letter {letter!r}")
            self.partition[letter] = LetterKind(kind)
        missing = [letter for letter in alphabet if letter not in self.partition]
        if missing:
            raise InputError(f"Letters {missing} are not classified as call, ret or int")

        for zero, delta in ((True, self.delta0), (False, self.delta1)):
            for (source, letter), (target, action) in delta.items():
                if zero and self.partition[letter] is LetterKind.RET:
                    raise InputError(f"Zero-counter transition on return letter {letter!r} from {source}")
                expected = voca_letter_effect(self.partition, letter)
                if action != expected:
                    raise InputError(
                        f"Transition {source} --{letter}--> {target} has action {action}, "
                        f"but {self.partition[letter].value} letters force {expected}")

    def letters_of(self, kind: LetterKind) -> Tuple[Letter, ...]:
        return tuple(letter for letter in self.alphabet if self.partition[letter] is kind)

    def word_counter_effect(self, word: Iterable[Letter]) -> Optional[int]:
        """
        Counter value after ``word`` computed from the partition alone, None when the
        counter would go negative. Agrees with counter_effect on every completed run.
        """
        counter = 0
        for letter in word:
            counter += voca_letter_effect(self.partition, letter)
            if counter < 0:
                return None
        return counter

    def _needs_zero_transition(self, letter: Letter) -> bool:
        return self.partition[letter] is not LetterKind.RET

    def __eq__(self, other: object) -> bool:
        return super().__eq__(other) and self.partition == other.partition


def complete_with_sink(machine: Droca) -> Droca:
    """
    Total version of a machine: one fresh non-final sink absorbs every undefined
    transition with action 0. For a Voca the sink transitions follow the partition
    and no zero-counter transition is added on return letters.

    Args:
        machine: A possibly partial machine

    Returns:
        Droca: A machine of the same type with one extra state
    """
    sink = max(machine.states) + 1
    states = set(machine.states) | {sink}
    delta0 = dict(machine.delta0)
    delta1 = dict(machine.delta1)
    partition = getattr(machine, "partition", None)

    for state in sorted(states):
        for letter in machine.alphabet:
            if partition is None:
                action = CounterAction.NOOP
                delta0.setdefault((state, letter), (sink, action))
            else:
                action = voca_letter_effect(partition, letter)
                if partition[letter] is not LetterKind.RET:
                    delta0.setdefault((state, letter), (sink, action))
            delta1.setdefault((state, letter), (sink, action))

    added = len(delta0) + len(delta1) - len(machine.delta0) - len(machine.delta1)
    logger.debug(f"Completed machine with sink {sink} ({added} transitions added)")

    if partition is None:
        return Droca(states, machine.alphabet, machine.initial, delta0, delta1, machine.finals)
    return Voca(states, machine.alphabet, machine.initial, delta0, delta1, machine.finals, partition)
