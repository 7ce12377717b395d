"""
Logging setup for ocalearn: coloured console output, optional log file, timers.
"""

import logging
import os
import sys
import time
from contextlib import contextmanager
from datetime import datetime
from typing import Dict, Iterator, Optional

import appdirs

ROOT_LOGGER_NAME = "ocalearn"

LOG_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL
}


class LogFormatter(logging.Formatter):
    """Console formatter that colours the level name."""

    RESET = '\033[0m'

    LEVEL_COLORS = {
        'DEBUG': '\033[34m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[31m\033[1m'
    }

    def __init__(self, colored: bool = True, *args, **kwargs):
        """
        Initialize formatter.

        Args:
            colored: Whether to colour level names (never on Windows or a non-tty stream)
            *args: Additional formatter args
            **kwargs: Additional formatter kwargs
        """
        self.colored = colored and sys.platform != 'win32' and sys.stderr.isatty()
        super().__init__(*args, **kwargs)

    def format(self, record: logging.LogRecord) -> str:
        formatted_msg = super().format(record)
        if self.colored and record.levelname in self.LEVEL_COLORS:
            colored_level = f"{self.LEVEL_COLORS[record.levelname]}{record.levelname}{self.RESET}"
            formatted_msg = formatted_msg.replace(record.levelname, colored_level, 1)
        return formatted_msg


def setup_logging(log_file: Optional[str] = None,
                  console_level: str = "INFO",
                  file_level: str = "DEBUG") -> logging.Logger:
    """
    Set up the ocalearn logger hierarchy.

    Args:
        log_file: Path to log file (None for no file logging)
        console_level: Console logging level
        file_level: File logging level

    Returns:
        logging.Logger: Configured logger
    """
    logger = logging.getLogger(ROOT_LOGGER_NAME)

    # Replace handlers from earlier calls
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    console = LOG_LEVELS.get(console_level.upper(), logging.INFO)
    logger.setLevel(console)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(console)
    console_format = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
    console_handler.setFormatter(LogFormatter(colored=True, fmt=console_format, datefmt='%H:%M:%S'))
    logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

        level = LOG_LEVELS.get(file_level.upper(), logging.DEBUG)
        logger.setLevel(min(console, level))

        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_format = ("%(asctime)s [%(levelname)s] %(name)s "
                       "(%(filename)s:%(lineno)d): %(message)s")
        file_handler.setFormatter(logging.Formatter(file_format, datefmt='%Y-%m-%d %H:%M:%S'))
        logger.addHandler(file_handler)

    return logger


def get_default_log_file() -> str:
    """
    Get the default log file path, one file per day under the user log directory.

    Returns:
        str: Default log file path
    """
    log_dir = appdirs.user_log_dir(ROOT_LOGGER_NAME)
    date_str = datetime.now().strftime("%Y-%m-%d")
    return os.path.join(log_dir, f"ocalearn_{date_str}.log")


def log_exception(logger: logging.Logger, exception: BaseException,
                  message: str = "An exception occurred", with_traceback: bool = False) -> None:
    """
    Log an exception.

    Args:
        logger: Logger to use
        exception: Exception to log
        message: Message to log with the exception
        with_traceback: Attach the traceback (used in debug mode)
    """
    exc_info = (type(exception), exception, exception.__traceback__) if with_traceback else None
    logger.error(f"{message}: {exception}", exc_info=exc_info)


class PerformanceLogger:
    """Named wall-clock timers whose durations are logged and accumulated."""

    def __init__(self, logger: logging.Logger, component: str):
        """
        Initialize performance logger.

        Args:
            logger: Logger to use
            component: Component name used as message prefix
        """
        self.logger = logger
        self.component = component
        self.start_times: Dict[str, float] = {}
        self.totals: Dict[str, float] = {}

    def start(self, name: str) -> None:
        self.start_times[name] = time.perf_counter()

    def end(self, name: str, level: str = "DEBUG") -> float:
        """
        Stop a timer, log and accumulate the duration.

        Args:
            name: Operation name
            level: Log level

        Returns:
            float: Duration in seconds
        """
        if name not in self.start_times:
            self.logger.warning(f"No start time found for {name}")
            return 0.0

        duration = time.perf_counter() - self.start_times.pop(name)
        self.totals[name] = self.totals.get(name, 0.0) + duration
        getattr(self.logger, level.lower())(f"{self.component} {name} took {duration:.4f} seconds")
        return duration

    @contextmanager
    def measure(self, name: str, level: str = "DEBUG") -> Iterator[None]:
        """Time the enclosed block under `name`."""
        self.start(name)
        try:
            yield
        finally:
            self.end(name, level)
