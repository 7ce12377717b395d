"""
Exception hierarchy for the learning library.

Library code raises these; the command-line entry point maps them to exit codes.
"""

from typing import Any, Optional


class OcaLearnError(Exception):
    """Base class for every error raised by ocalearn."""


class InputError(OcaLearnError, ValueError):
    """Malformed input: foreign letters, bad files, invalid machines or counter maps."""


class InconsistentSampleError(InputError):
    """A sample (or an enriched sample) has a word that is both positive and negative."""


class ExtractionError(OcaLearnError):
    """A DROCA could not be read off the learned DFA over the enriched alphabet."""


class GenerationError(OcaLearnError):
    """The random generator ran out of restarts."""


class BudgetExceeded(OcaLearnError):
    """A cooperative should-stop callback asked a long computation to stop."""


class LearningTimeout(OcaLearnError):
    """
    An active learning run hit one of its limits.

    Attributes:
        report: The partial run report at the time of the breach
        hypothesis: The last hypothesis handed to the teacher, if any
    """

    def __init__(self, message: str, report: Any = None, hypothesis: Optional[Any] = None):
        super().__init__(message)
        self.report = report
        self.hypothesis = hypothesis


class SynchronizationError(OcaLearnError):
    """Two complete visibly one-counter machines over the same partition got out of step."""
