"""
Tests for the observation table on the two running-example machines.
"""

import pytest

from conftest import AB
from ocalearn.active import (InconsistencyWitness, ObservationTable, RowSignature, TableMode,
                             Teacher, close_and_consistify)
from ocalearn.errors import InputError
from ocalearn.passive import ActionTuple

_ = None


def act(sign, on_a, on_b):
    return ActionTuple(sign, (on_a, on_b), AB)


@pytest.fixture
def droca_table(droca_anbm):
    teacher = Teacher(droca_anbm)
    table = ObservationTable(AB)
    table.add_row(("a", "b"))
    table.add_row(("b",))
    table.fill(teacher)
    return table, teacher


@pytest.fixture
def voca_table(voca_anbm):
    teacher = Teacher(voca_anbm)
    table = ObservationTable(AB, TableMode.VOCA, voca_anbm.partition)
    table.add_row(("a", "b"))
    table.fill(teacher)
    return table, teacher


def test_new_table_has_empty_row_and_column():
    table = ObservationTable(AB)
    assert table.rows == [()]
    assert table.columns == [()]
    assert table.extensions == [("a",), ("b",)]


def test_voca_mode_needs_partition():
    with pytest.raises(InputError):
        ObservationTable(AB, TableMode.VOCA)


def test_add_row_is_prefix_closed():
    table = ObservationTable(AB)
    assert table.add_row(("a", "b")) == 2
    assert table.add_row(("a",)) == 0
    assert table.rows == [(), ("a",), ("a", "b")]
    assert table.extensions == [("b",), ("a", "a"), ("a", "b", "a"), ("a", "b", "b")]


def test_add_column_is_suffix_closed():
    table = ObservationTable(AB)
    assert table.add_column(("a", "b")) == 2
    assert table.columns == [(), ("b",), ("a", "b")]
    with pytest.raises(InputError):
        table.add_column(("c",))


def test_droca_table_rows(droca_table):
    table, _teacher = droca_table
    assert table.extensions == [("a", "a"), ("b", "a"), ("b", "b"), ("a", "b", "a"), ("a", "b", "b")]
    assert table.row(()) == RowSignature(0, ((0, act(0, 1, 0)),))
    assert table.row(("a",)) == RowSignature(1, ((0, act(1, 1, -1)),))
    assert table.row(("b",)) == RowSignature(0, ((1, act(0, 0, 0)),))
    assert table.row(("a", "b")) == RowSignature(0, ((0, act(0, 0, 0)),))
    assert table.row(("a", "a")) == RowSignature(2, ((0, act(1, 1, -1)),))
    assert table.row(("b", "b")) == table.row(("b",))
    assert table.row(("a", "b", "a")) == table.row(("a", "b"))
    assert table.row(("b",)) != table.row(("a", "b"))


def test_droca_table_is_closed_and_consistent(droca_table):
    table, _teacher = droca_table
    assert table.is_d_closed(1) is None
    assert table.is_d_consistent(1) is None


def test_closure_witness_with_only_the_empty_row(droca_anbm):
    table = ObservationTable(AB)
    table.fill(Teacher(droca_anbm))
    assert table.is_d_closed(1) == ("a",)
    assert table.is_d_closed(0) == ("b",)


def test_consistency_witness(droca_anbm):
    teacher = Teacher(droca_anbm)
    table = ObservationTable(AB)
    table.add_row(("a", "b"))
    table.add_row(("b", "a"))
    table.fill(teacher)
    assert table.row(("a", "b")) == table.row(("b", "a"))
    assert table.is_d_consistent(1) == InconsistencyWitness(("a", "b"), ("b", "a"), "b", ())

    close_and_consistify(table, 1, teacher)
    assert ("b",) in table.columns
    assert table.is_d_closed(1) is None and table.is_d_consistent(1) is None


def test_voca_table_rows(voca_table):
    table, _teacher = voca_table
    assert table.extensions == [("b",), ("a", "a"), ("a", "b", "a"), ("a", "b", "b")]
    assert table.row(()) == RowSignature(0, (0,))
    assert table.row(("a",)) == RowSignature(1, (0,))
    assert table.row(("a", "b")) == RowSignature(0, (1,))
    assert table.row(("b",)) == RowSignature(_, (_,))
    assert table.row(("a", "a")) == RowSignature(2, (0,))
    assert table.row(("a", "b", "a")) == RowSignature(1, (0,))
    assert table.row(("a", "b", "b")) == RowSignature(_, (_,))


def test_voca_table_is_closed_and_consistent(voca_table):
    table, _teacher = voca_table
    assert table.is_d_closed(1) is None
    assert table.is_d_consistent(1) is None


def test_voca_table_asks_no_counter_values(voca_table):
    table, teacher = voca_table
    assert table.act == {}
    assert teacher.stats.cv == 0
    # invalid words are never sent to the teacher
    assert teacher.stats.mq == 5


def test_fill_caches_answers(droca_table):
    table, teacher = droca_table
    before = teacher.stats.as_dict()
    table.fill(teacher)
    assert teacher.stats.as_dict() == before


def test_row_errors(droca_anbm):
    table = ObservationTable(AB)
    with pytest.raises(InputError):
        table.row(())
    table.fill(Teacher(droca_anbm))
    with pytest.raises(InputError):
        table.row(("b", "b", "b"))


def test_extract_sample_from_droca_table(droca_table):
    table, teacher = droca_table
    sample, ce = table.extract_sample(teacher)
    assert sample.positives == {("b",), ("b", "b"), ("a", "b", "b")}
    assert sample.negatives == {(), ("a",), ("a", "b"), ("a", "a"), ("b", "a"), ("a", "b", "a")}
    assert ce[("a", "a")] == 2
    assert ce[("a", "b", "b")] == 0


def test_extract_sample_skips_invalid_words(voca_table):
    table, teacher = voca_table
    sample, ce = table.extract_sample(teacher)
    assert sample.positives == {("a", "b")}
    assert sample.negatives == {(), ("a",), ("a", "a"), ("a", "b", "a")}
    assert ce[("a", "b", "a")] == 1
