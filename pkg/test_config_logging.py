"""
Tests for configuration loading and the logging helpers.
"""

import logging

import pytest
import yaml

from ocalearn.errors import InputError
from ocalearn.utils.config_manager import THREADS_ENV_VAR, ConfigManager
from ocalearn.utils.logging import (PerformanceLogger, get_default_log_file, log_exception,
                                    setup_logging)


@pytest.fixture(autouse=True)
def no_user_config(tmp_path, monkeypatch):
    monkeypatch.setattr(ConfigManager, "default_config_file",
                        staticmethod(lambda: str(tmp_path / "missing.yaml")))
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)


def test_defaults():
    config = ConfigManager()
    assert config.get("learning", "max_rounds") == 200
    assert config.get("teacher", "max_cex_len") == 256
    assert config.get("teacher", "counter_cutoff") is None
    assert config.get_config("generation.max_restarts") == 10000
    assert config.get_config("nosection") is None
    assert config.get("learning", "missing", 7) == 7
    assert config.threads >= 1


def test_yaml_overrides_merge_over_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("learning:\n  max_rounds: 5\nteacher:\n  counter_cutoff: 40\n")
    config = ConfigManager(str(path))
    assert config.get("learning", "max_rounds") == 5
    assert config.get("learning", "timeout_s") == 300.0
    assert config.get("teacher", "counter_cutoff") == 40


def test_empty_yaml_is_accepted(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert ConfigManager(str(path)).get("bench", "verify_len") == 0


@pytest.mark.parametrize("text", [
    "learning:\n  max_rounds: -1\n",
    "teacher:\n  unknown: 1\n",
    "colours: true\n",
    "learning: [1, 2\n",
])
def test_invalid_configuration(tmp_path, text):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(InputError):
        ConfigManager(str(path))


def test_missing_explicit_file(tmp_path):
    with pytest.raises(InputError):
        ConfigManager(str(tmp_path / "nope.yaml"))


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV_VAR, "3")
    assert ConfigManager().threads == 3
    monkeypatch.setenv(THREADS_ENV_VAR, "many")
    assert ConfigManager().get("bench", "threads") is None


def test_export_writes_the_merged_configuration(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("bench:\n  verify_len: 9\n")
    config = ConfigManager(str(path))
    assert yaml.safe_load(config.dump())["bench"]["verify_len"] == 9
    out = tmp_path / "sub" / "exported.yaml"
    config.export_config(str(out))
    assert yaml.safe_load(out.read_text()) == config.memory_config
    assert ConfigManager(str(out)).get("bench", "verify_len") == 9
    assert ConfigManager().get("bench", "verify_len") == 0


def test_setup_logging_replaces_handlers(tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    logger = setup_logging(str(log_file), console_level="WARNING")
    setup_logging(str(log_file), console_level="WARNING")
    assert len(logger.handlers) == 2
    logging.getLogger("ocalearn.test").debug("written to the file only")
    for handler in logger.handlers:
        handler.flush()
    assert "written to the file only" in log_file.read_text()
    setup_logging(console_level="WARNING")
    assert len(logger.handlers) == 1


def test_default_log_file_name():
    assert get_default_log_file().endswith(".log")


def test_log_exception(caplog):
    logger = logging.getLogger("ocalearn.test")
    with caplog.at_level(logging.ERROR, logger="ocalearn.test"):
        log_exception(logger, InputError("bad letter"), "load failed")
    assert "load failed: bad letter" in caplog.text


def test_performance_logger_accumulates():
    perf = PerformanceLogger(logging.getLogger("ocalearn.test"), "unit")
    with perf.measure("step"):
        pass
    with perf.measure("step"):
        pass
    assert set(perf.totals) == {"step"}
    assert perf.totals["step"] >= 0.0
    assert perf.end("never-started") == 0.0
    with perf.measure("other"):
        pass
    assert set(perf.totals) == {"step", "other"}
