"""
Tests for the simulated teacher and its equivalence oracles.
"""

import itertools

import pytest

from conftest import AB, build_voca_anbm
from ocalearn.active import (EquivalenceVerdict, MismatchKind, Teacher, TeacherLimits, VerdictKind,
                             brute_force_equiv, synchronous_product_search)
from ocalearn.automata.alphabet import Alphabet
from ocalearn.automata.machines import Droca
from ocalearn.bench.randgen import GenConfig, random_droca, random_voca
from ocalearn.errors import InputError, SynchronizationError


def sink_machine(alphabet=AB) -> Droca:
    loops = {(0, letter): (0, 0) for letter in alphabet}
    return Droca([0], alphabet, 0, loops, dict(loops), [])


def test_membership_queries(droca_anbm):
    teacher = Teacher(droca_anbm)
    assert teacher.mq(("b", "b")) == 1
    assert teacher.mq(()) == 0
    assert teacher.mq(("a", "b")) == 0
    assert teacher.mq(("b", "b")) == teacher.mq(("b", "b"))


def test_counter_value_queries(droca_anbm, voca_anbm):
    assert Teacher(droca_anbm).cv(()) == 0
    assert Teacher(droca_anbm).cv(("a", "a")) == 2
    teacher = Teacher(voca_anbm)
    assert teacher.cv(("a", "b", "a")) == 1
    assert teacher.cv(("a", "b", "b")) is None
    assert teacher.mq(("a", "b", "b")) == 0


def test_incomplete_target_is_rejected():
    with pytest.raises(InputError):
        Teacher(Droca([0], AB, 0, {}, {}, []))


def test_msq_against_sink_finds_counter_mismatch(droca_anbm):
    verdict = Teacher(droca_anbm).msq(sink_machine())
    assert verdict.kind is VerdictKind.COUNTEREXAMPLE
    assert verdict.word == ("a",)
    assert verdict.mismatch is MismatchKind.COUNTER
    assert str(verdict) == "counterexample a counter"


def test_msq_droca_against_voca(droca_anbm, voca_anbm):
    verdict = Teacher(droca_anbm).msq(voca_anbm)
    assert verdict.is_counterexample
    assert verdict.word == ("b",)
    assert verdict.mismatch is MismatchKind.MEMBERSHIP


def test_msq_of_bounded_machine_against_itself_is_equivalent():
    verdict = Teacher(sink_machine()).msq(sink_machine())
    assert verdict.kind is VerdictKind.EQUIVALENT
    assert str(verdict) == "equivalent"


def test_msq_of_unbounded_machine_against_itself(droca_anbm):
    verdict = Teacher(droca_anbm).msq(droca_anbm)
    assert not verdict.is_counterexample


def test_msq_with_tiny_bound_is_presumed(droca_anbm):
    teacher = Teacher(droca_anbm, TeacherLimits(max_cex_len=0))
    verdict = teacher.msq(droca_anbm)
    assert verdict.kind is VerdictKind.PRESUMED_EQUIVALENT
    assert str(verdict).startswith("presumed-equivalent (bound")


def test_msq_rejects_other_alphabets(droca_anbm):
    with pytest.raises(InputError):
        Teacher(droca_anbm).msq(sink_machine(Alphabet("abc")))


def test_stats_count_each_query(droca_anbm):
    teacher = Teacher(droca_anbm)
    teacher.mq(("a",))
    teacher.mq(("b",))
    teacher.cv(("a",))
    teacher.msq(sink_machine())
    assert teacher.stats.as_dict() == {"mq": 2, "cv": 1, "msq": 1}
    teacher.reset_stats()
    assert teacher.stats.as_dict() == {"mq": 0, "cv": 0, "msq": 0}


@pytest.mark.parametrize("kwargs", [
    {"max_cex_len": -1},
    {"max_configurations": 0},
    {"counter_cutoff": 0},
])
def test_teacher_limits_validation(kwargs):
    with pytest.raises(InputError):
        TeacherLimits(**kwargs)


def test_default_cutoff_depends_on_sizes(droca_anbm):
    assert TeacherLimits().cutoff_for(droca_anbm, sink_machine()) == 4 * 1 + 4 + 1
    assert TeacherLimits(counter_cutoff=3).cutoff_for(droca_anbm, sink_machine()) == 3


def test_verdict_constructors():
    assert EquivalenceVerdict.equivalent().kind is VerdictKind.EQUIVALENT
    verdict = EquivalenceVerdict.counterexample((), MismatchKind.MEMBERSHIP)
    assert str(verdict) == "counterexample @eps membership"


def test_brute_force_examples(droca_anbm, voca_anbm):
    assert brute_force_equiv(droca_anbm, droca_anbm, 8) is None
    assert brute_force_equiv(droca_anbm, voca_anbm, 8) == (("b",), MismatchKind.MEMBERSHIP)
    assert brute_force_equiv(droca_anbm, sink_machine(), 4) == (("a",), MismatchKind.COUNTER)


def test_mismatch_on_empty_word(droca_anbm):
    accepting = Droca([0], AB, 0, {(0, "a"): (0, 0), (0, "b"): (0, 0)},
                      {(0, "a"): (0, 0), (0, "b"): (0, 0)}, [0])
    found, closed = synchronous_product_search(droca_anbm, accepting, 10, 10, 1000)
    assert found == ((), MismatchKind.MEMBERSHIP)
    assert closed


def _is_mismatch(a, b, word):
    observe = [(m.accepts(word), m.counter_effect(word)) for m in (a, b)]
    return observe[0] != observe[1]


@pytest.mark.parametrize("seed", range(25))
def test_product_search_agrees_with_brute_force(seed):
    target = random_droca(GenConfig(3, 2, seed))
    other = random_droca(GenConfig(3, 2, 500 + seed))
    found, _ = synchronous_product_search(target, other, 40, 8, 100000)
    expected = brute_force_equiv(target, other, 8)
    if found is not None:
        assert expected == found
        word = found[0]
        for n in range(len(word)):
            for shorter in itertools.product(AB, repeat=n):
                assert not _is_mismatch(target, other, shorter)
    else:
        assert expected is None


def _voca_with_partition(partition, seed):
    for offset in range(500):
        candidate = random_voca(GenConfig(3, 3, seed + offset))
        if candidate.partition == partition:
            return candidate
    pytest.fail("no voca with matching letter classes")


@pytest.mark.parametrize("seed", range(10))
def test_voca_mismatches_are_membership_only(seed):
    target = random_voca(GenConfig(3, 3, seed))
    other = _voca_with_partition(target.partition, 700 + seed * 500)
    found, _ = synchronous_product_search(target, other, 30, 8, 100000)
    if found is not None:
        assert found[1] is MismatchKind.MEMBERSHIP


def test_vocas_out_of_step_raise(voca_anbm, monkeypatch):
    broken = build_voca_anbm()
    honest_step = broken.step

    def step(configuration, letter):
        if letter == "a" and configuration.counter == 1:
            return None
        return honest_step(configuration, letter)

    monkeypatch.setattr(broken, "step", step)
    assert broken.is_complete()
    with pytest.raises(SynchronizationError):
        synchronous_product_search(voca_anbm, broken, 10, 10, 1000)
    with pytest.raises(SynchronizationError):
        Teacher(voca_anbm).msq(broken)


def test_voca_stuck_against_droca_is_a_counterexample(droca_anbm, voca_anbm):
    found, _ = synchronous_product_search(voca_anbm, droca_anbm, 10, 10, 1000)
    assert found == (("b",), MismatchKind.MEMBERSHIP)
