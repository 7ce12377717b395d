"""
Tests for benchmark seeding, records and the CSV files.
"""

import csv

import pytest

from ocalearn.bench.harness import (BENCH_FIELDS, SUMMARY_FIELDS, BenchRecord, BenchSettings,
                                    bench_tasks, instance_seed, run_bench, run_instance, summarize,
                                    summary_path)
from ocalearn.errors import InputError


def record(success, eq_queries, kind="droca", n=3, k=2):
    return BenchRecord(kind, n, k, 7, success, 10.0, eq_queries, 5, 4, 3, 2, 6, 1)


def test_instance_seed_is_stable():
    assert instance_seed(1, 4, 2, 0) == instance_seed(1, 4, 2, 0)
    assert instance_seed(1, 4, 2, 0) != instance_seed(1, 4, 2, 1)
    assert instance_seed(1, 4, 2, 0) != instance_seed(2, 4, 2, 0)
    assert 0 <= instance_seed(123, 8, 3, 99) < 2 ** 63


def test_bench_tasks_cover_the_grid():
    settings = BenchSettings()
    tasks = list(bench_tasks(settings, [2, 3], [2], 2, 5))
    assert [(n, k) for _, n, k, _ in tasks] == [(2, 2), (2, 2), (3, 2), (3, 2)]
    assert len({seed for *_, seed in tasks}) == 4


def test_unknown_kind_is_rejected():
    with pytest.raises(InputError):
        BenchSettings(kind="pda")


def test_record_row_formatting():
    assert record(True, 3).as_row() == ["droca", "3", "2", "7", "true", "10.000", "3", "5", "4", "3",
                                        "2", "6", "1"]


def test_summary_averages_successes_only():
    rows = summarize([record(True, 2), record(True, 4), record(False, 100)])
    assert len(rows) == 1
    row = rows[0]
    assert row["total"] == 3 and row["successes"] == 2
    assert row["avg_eq_queries"] == "3.000"


def test_summary_of_failed_cell_is_blank():
    row = summarize([record(False, 1)])[0]
    assert row["successes"] == 0
    assert row["avg_wall_ms"] == ""


def test_summary_path():
    assert summary_path("out/bench.csv") == "out/bench_summary.csv"


def test_failed_generation_becomes_failed_record():
    settings = BenchSettings(max_restarts=5)
    result = run_instance((settings, 1, 2, 3))
    assert not result.success
    assert result.eq_queries == 0


def test_run_instance_learns_small_machine():
    settings = BenchSettings(timeout_s=60, verify_len=6)
    result = run_instance((settings, 2, 2, instance_seed(1, 2, 2, 0)))
    assert result.success
    assert result.eq_queries >= 1


def test_empty_sweep_writes_headers(tmp_path):
    out = tmp_path / "bench.csv"
    records = run_bench(BenchSettings(), [2], [2], 0, 1, str(out))
    assert records == []
    with open(out, newline="") as f:
        assert list(csv.reader(f)) == [list(BENCH_FIELDS)]
    with open(summary_path(str(out)), newline="") as f:
        assert list(csv.reader(f)) == [list(SUMMARY_FIELDS)]


def test_small_sweep_writes_one_row_per_instance(tmp_path):
    out = tmp_path / "nested" / "bench.csv"
    settings = BenchSettings(kind="voca", timeout_s=60)
    records = run_bench(settings, [2], [2], 2, 1, str(out))
    assert len(records) == 2
    with open(out, newline="") as f:
        rows = list(csv.DictReader(f))
    assert [row["kind"] for row in rows] == ["voca", "voca"]
    assert [int(row["seed"]) for row in rows] == [instance_seed(1, 2, 2, i) for i in range(2)]
