"""
Utility modules for ocalearn.
"""

from ocalearn.utils.logging import setup_logging, get_default_log_file, log_exception, PerformanceLogger
from ocalearn.utils.config_manager import ConfigManager

__all__ = [
    'setup_logging',
    'get_default_log_file',
    'log_exception',
    'PerformanceLogger',
    'ConfigManager',
]
