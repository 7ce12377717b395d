"""
Shared fixtures: the two running-example machines and the worked passive sample.
"""

import pytest

from ocalearn.automata.alphabet import Alphabet
from ocalearn.automata.machines import Droca, LetterKind, Voca
from ocalearn.samples.sample_set import CounterMap, SampleSet

AB = Alphabet("ab")


def build_droca_anbm() -> Droca:
    """Recognises a^n b^m with m > n. State 3 is the non-final sink."""
    delta0 = {
        (0, "a"): (0, 1), (0, "b"): (2, 0),
        (1, "a"): (3, 0), (1, "b"): (2, 0),
        (2, "a"): (3, 0), (2, "b"): (2, 0),
        (3, "a"): (3, 0), (3, "b"): (3, 0),
    }
    delta1 = {
        (0, "a"): (0, 1), (0, "b"): (1, -1),
        (1, "a"): (3, 0), (1, "b"): (1, -1),
        (2, "a"): (3, 0), (2, "b"): (3, 0),
        (3, "a"): (3, 0), (3, "b"): (3, 0),
    }
    return Droca(range(4), AB, 0, delta0, delta1, [2])


def build_voca_anbm() -> Voca:
    """a is a call, b a return; accepts a^n b^m with 1 <= m <= n. State 2 is the sink."""
    delta0 = {
        (0, "a"): (0, 1),
        (1, "a"): (2, 1),
        (2, "a"): (2, 1),
    }
    delta1 = {
        (0, "a"): (0, 1), (0, "b"): (1, -1),
        (1, "a"): (2, 1), (1, "b"): (1, -1),
        (2, "a"): (2, 1), (2, "b"): (2, -1),
    }
    partition = {"a": LetterKind.CALL, "b": LetterKind.RET}
    return Voca(range(3), AB, 0, delta0, delta1, [1], partition)


@pytest.fixture
def ab():
    return AB


@pytest.fixture
def droca_anbm():
    return build_droca_anbm()


@pytest.fixture
def voca_anbm():
    return build_voca_anbm()


@pytest.fixture
def worked_sample():
    """S+ = {ab, bb}, S- = {a, b}."""
    return SampleSet([("a", "b"), ("b", "b")], [("a",), ("b",)])


@pytest.fixture
def worked_counters():
    return CounterMap({(): 0, ("a",): 1, ("b",): 0, ("a", "b"): 0, ("b", "b"): 1})
