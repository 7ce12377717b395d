"""
Tests for the command-line entry point.
"""

import pytest
import yaml

from ocalearn.automata.serialization import load_automaton, save_automaton
from ocalearn.main import (EXIT_INEQUIVALENT, EXIT_INPUT, EXIT_OK, EXIT_TIMEOUT, build_parser, main,
                           parse_range)
from ocalearn.errors import InputError
from ocalearn.utils.config_manager import THREADS_ENV_VAR, ConfigManager


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setattr(ConfigManager, "default_config_file",
                        staticmethod(lambda: str(tmp_path / "missing.yaml")))
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)


@pytest.fixture
def machine_files(tmp_path, droca_anbm, voca_anbm):
    droca_path = tmp_path / "droca.oca"
    voca_path = tmp_path / "voca.oca"
    save_automaton(droca_anbm, str(droca_path))
    save_automaton(voca_anbm, str(voca_path))
    return str(droca_path), str(voca_path)


@pytest.fixture
def worked_files(tmp_path):
    samples = tmp_path / "sample.txt"
    counters = tmp_path / "counters.txt"
    samples.write_text("+\tab\n+\tbb\n-\ta\n-\tb\n")
    counters.write_text("@eps\t0\na\t1\nb\t0\nab\t0\nbb\t1\n")
    return str(samples), str(counters)


def test_parse_range():
    assert parse_range("4") == [4]
    assert parse_range("2-5") == [2, 3, 4, 5]
    assert parse_range("2,4, 6") == [2, 4, 6]
    for text in ("", "x", "5-2", "1-"):
        with pytest.raises(InputError):
            parse_range(text)


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_generate_to_file(tmp_path):
    out = tmp_path / "gen.oca"
    assert main(["generate", "droca", "3", "2", "--seed", "5", "--out", str(out)]) == EXIT_OK
    machine = load_automaton(str(out))
    assert machine.num_states == 3
    assert machine.is_complete()


def test_generate_is_reproducible(capsys):
    main(["generate", "voca", "3", "2", "--seed", "9"])
    first = capsys.readouterr().out
    main(["generate", "voca", "3", "2", "--seed", "9"])
    assert capsys.readouterr().out == first
    assert first.startswith("voca\n")


def test_generate_failure_exit_code(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("generation:\n  max_restarts: 5\n")
    assert main(["--config", str(config), "generate", "droca", "1", "2"]) == EXIT_INPUT


def test_learn_passive_on_worked_sample(worked_files, capsys):
    samples, counters = worked_files
    assert main(["learn-passive", samples, counters]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("droca\n")
    assert "consistent true" in out
    assert "states 3" in out


def test_learn_passive_with_alphabet_and_output(worked_files, tmp_path, capsys):
    samples, counters = worked_files
    out = tmp_path / "learned.oca"
    assert main(["learn-passive", samples, counters, "--alphabet", "a b", "--out", str(out)]) == EXIT_OK
    machine = load_automaton(str(out))
    assert machine.accepts("ab") and not machine.accepts("a")
    assert capsys.readouterr().out.splitlines() == ["consistent true", "states 3"]


def test_learn_passive_rejects_overlapping_sample(tmp_path, worked_files):
    _, counters = worked_files
    samples = tmp_path / "overlap.txt"
    samples.write_text("+\tab\n-\tab\n")
    assert main(["learn-passive", str(samples), counters]) == EXIT_INPUT


def test_learn_active(machine_files, capsys):
    droca_path, _ = machine_files
    assert main(["learn-active", droca_path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "success true" in out
    assert "kind droca" in out


def test_learn_active_voca(machine_files, capsys):
    droca_path, voca_path = machine_files
    assert main(["learn-active", voca_path, "--kind", "voca"]) == EXIT_OK
    assert "act_entries 0" in capsys.readouterr().out
    assert main(["learn-active", droca_path, "--kind", "voca"]) == EXIT_INPUT


def test_learn_active_timeout(machine_files, capsys):
    droca_path, _ = machine_files
    assert main(["learn-active", droca_path, "--max-rounds", "0"]) == EXIT_TIMEOUT
    out = capsys.readouterr().out
    assert "success false" in out
    assert "iterations 0" in out


def test_check_finds_counterexample(machine_files, capsys):
    droca_path, voca_path = machine_files
    assert main(["check", droca_path, voca_path]) == EXIT_INEQUIVALENT
    assert capsys.readouterr().out.strip() == "counterexample b membership"


def test_check_machine_against_itself(machine_files, capsys):
    droca_path, _ = machine_files
    assert main(["check", droca_path, droca_path]) == EXIT_OK
    assert "equivalent" in capsys.readouterr().out


def test_check_missing_file(tmp_path, machine_files):
    droca_path, _ = machine_files
    assert main(["check", droca_path, str(tmp_path / "nope.oca")]) == EXIT_INPUT


def test_dot(machine_files, capsys):
    droca_path, _ = machine_files
    assert main(["dot", droca_path]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph")


def test_run_trace(machine_files, capsys):
    droca_path, voca_path = machine_files
    assert main(["run", droca_path, "ab"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "start\t0\t0", "a\t0\t1", "b\t1\t0", "reject"]
    assert main(["run", voca_path, "b"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["start\t0\t0", "stuck after @eps", "reject"]
    assert main(["run", droca_path, "abc"]) == EXIT_INPUT


def test_bench_writes_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code = main(["bench", "--states", "2", "--alphabets", "2", "--per-cell", "1", "--threads", "1",
                 "--out", str(out)])
    assert code == EXIT_OK
    assert out.exists()
    assert (tmp_path / "bench_summary.csv").exists()
    assert capsys.readouterr().out.startswith("1/1 learned")


def test_bench_rejects_negative_per_cell(tmp_path):
    assert main(["bench", "--per-cell", "-1", "--out", str(tmp_path / "b.csv")]) == EXIT_INPUT


def test_check_with_enumeration(machine_files, capsys):
    droca_path, voca_path = machine_files
    assert main(["check", droca_path, droca_path, "--brute-len", "6"]) == EXIT_OK
    assert main(["check", voca_path, droca_path, "--brute-len", "6"]) == EXIT_INEQUIVALENT
    assert capsys.readouterr().out.splitlines()[-1] == "counterexample b membership"


def test_config_prints_effective_values(tmp_path, capsys):
    path = tmp_path / "config.yaml"
    path.write_text("learning:\n  max_rounds: 7\n")
    assert main(["--config", str(path), "config"]) == EXIT_OK
    printed = yaml.safe_load(capsys.readouterr().out)
    assert printed["learning"]["max_rounds"] == 7
    assert printed["teacher"]["max_cex_len"] == 256


def test_config_export_can_be_loaded_back(tmp_path):
    out = tmp_path / "exported.yaml"
    assert main(["config", "--out", str(out)]) == EXIT_OK
    assert main(["--config", str(out), "config"]) == EXIT_OK
    assert ConfigManager(str(out)).get("learning", "max_rounds") == 200
