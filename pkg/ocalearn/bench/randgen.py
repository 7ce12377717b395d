"""
Random benchmark machines.

Every state is final with probability 1/2 and every transition target and
action is drawn uniformly. A draw is discarded and repeated when all or none of
the states are final, or when some state cannot be reached from the initial
configuration. Draws use numpy's PCG64 generator, so a seed fixes the machine.
"""

import logging
import string
from typing import Dict, List, Optional, Tuple

import numpy as np

from ocalearn.automata.alphabet import Alphabet
from ocalearn.automata.machines import Droca, LetterKind, Voca, voca_letter_effect
from ocalearn.errors import GenerationError, InputError

logger = logging.getLogger(__name__)

RESTART_WARNING = 1000
_KINDS = (LetterKind.CALL, LetterKind.RET, LetterKind.INT)


class GenConfig:
    """
    Parameters of one random machine.

    Attributes:
        n_states: Number of states
        alphabet_size: Number of letters, named a, b, c, ...
        seed: Seed of the PCG64 generator
        max_restarts: Draws allowed before giving up
        reach_cutoff: Counter bound of the reachability check (None means 2·n_states)
    """

    def __init__(self, n_states: int, alphabet_size: int, seed: int = 0,
                 max_restarts: int = 10000, reach_cutoff: Optional[int] = None):
        if n_states < 1:
            raise InputError("n_states must be at least 1")
        if not 1 <= alphabet_size <= len(string.ascii_lowercase):
            raise InputError(f"alphabet_size must be between 1 and {len(string.ascii_lowercase)}")
        if max_restarts < 1:
            raise InputError("max_restarts must be at least 1")
        self.n_states = n_states
        self.alphabet_size = alphabet_size
        self.seed = seed
        self.max_restarts = max_restarts
        self.reach_cutoff = reach_cutoff if reach_cutoff is not None else 2 * n_states

    def alphabet(self) -> Alphabet:
        return Alphabet(string.ascii_lowercase[:self.alphabet_size])

    def __repr__(self) -> str:
        return f"GenConfig(n={self.n_states}, k={self.alphabet_size}, seed={self.seed})"


def _generator(config: GenConfig, rng: Optional[np.random.Generator]) -> np.random.Generator:
    return rng if rng is not None else np.random.Generator(np.random.PCG64(config.seed))


def _draw_finals(rng: np.random.Generator, n: int) -> Optional[List[int]]:
    flags = rng.random(n) < 0.5
    if flags.all() or not flags.any():
        return None
    return [int(q) for q in np.flatnonzero(flags)]


def _accept(machine: Droca, config: GenConfig, attempt: int) -> bool:
    if len(machine.reachable_states(config.reach_cutoff)) != config.n_states:
        return False
    level = logging.WARNING if attempt >= RESTART_WARNING else logging.DEBUG
    logger.log(level, f"Generated {machine!r} for {config!r} after {attempt} draws")
    return True


def random_droca(config: GenConfig, rng: Optional[np.random.Generator] = None) -> Droca:
    """
    Draw a complete random Droca.

    Args:
        config: Size, alphabet and seed
        rng: Generator to draw from (default: PCG64 seeded with config.seed)

    Returns:
        Droca: States 0..n-1 with initial state 0

    Raises:
        GenerationError: no acceptable machine within config.max_restarts draws
    """
    rng = _generator(config, rng)
    n, alphabet = config.n_states, config.alphabet()
    letters = alphabet.letters

    for attempt in range(1, config.max_restarts + 1):
        finals = _draw_finals(rng, n)
        if finals is None:
            continue
        targets0 = rng.integers(0, n, size=(n, len(letters)))
        actions0 = rng.integers(0, 2, size=(n, len(letters)))
        targets1 = rng.integers(0, n, size=(n, len(letters)))
        actions1 = rng.integers(-1, 2, size=(n, len(letters)))

        delta0: Dict[Tuple[int, str], Tuple[int, int]] = {}
        delta1: Dict[Tuple[int, str], Tuple[int, int]] = {}
        for q in range(n):
            for i, letter in enumerate(letters):
                delta0[(q, letter)] = (int(targets0[q, i]), int(actions0[q, i]))
                delta1[(q, letter)] = (int(targets1[q, i]), int(actions1[q, i]))
        machine = Droca(range(n), alphabet, 0, delta0, delta1, finals)
        if _accept(machine, config, attempt):
            return machine

    raise GenerationError(f"No acceptable droca for {config!r} within {config.max_restarts} draws")


def random_voca(config: GenConfig, rng: Optional[np.random.Generator] = None) -> Voca:
    """
    Draw a complete random Voca.

    Every letter is put into call, ret or int uniformly; draws without at least one
    call and one ret letter are repeated. Actions follow the letter classes and no
    zero-counter transition is drawn on a ret letter.

    Raises:
        InputError: fewer than two letters
        GenerationError: no acceptable machine within config.max_restarts draws
    """
    if config.alphabet_size < 2:
        raise InputError("A voca needs at least two letters")
    rng = _generator(config, rng)
    n, alphabet = config.n_states, config.alphabet()
    letters = alphabet.letters

    for attempt in range(1, config.max_restarts + 1):
        classes = rng.integers(0, len(_KINDS), size=len(letters))
        partition = {letter: _KINDS[int(c)] for letter, c in zip(letters, classes)}
        if LetterKind.CALL not in partition.values() or LetterKind.RET not in partition.values():
            continue
        finals = _draw_finals(rng, n)
        if finals is None:
            continue
        targets0 = rng.integers(0, n, size=(n, len(letters)))
        targets1 = rng.integers(0, n, size=(n, len(letters)))

        delta0: Dict[Tuple[int, str], Tuple[int, int]] = {}
        delta1: Dict[Tuple[int, str], Tuple[int, int]] = {}
        for q in range(n):
            for i, letter in enumerate(letters):
                action = int(voca_letter_effect(partition, letter))
                if partition[letter] is not LetterKind.RET:
                    delta0[(q, letter)] = (int(targets0[q, i]), action)
                delta1[(q, letter)] = (int(targets1[q, i]), action)
        machine = Voca(range(n), alphabet, 0, delta0, delta1, finals, partition)
        if _accept(machine, config, attempt):
            return machine

    raise GenerationError(f"No acceptable voca for {config!r} within {config.max_restarts} draws")
