"""
Module containing public types and exceptions for coxcomm.

This module provides the exception hierarchy raised by every operation in the
package, together with the small public enumerations used to select output
formats, classify roots and pick the rule used to extend lambda functions.

Every exception carries the process exit code the command line front end uses
when it reports the failure, so library callers and the CLI agree on how a
failure is classified.

Internal implementation details are defined in `_core_types.py` and should
not be used directly by external callers.
"""
from enum import Enum

from ._core_types import ExitCode

class CoxCommException(Exception):
    """Base class for all coxcomm exceptions."""
    exit_code = ExitCode.INVALID_INPUT

    def __init__(self, message="An error occurred in coxcomm", exit_code=None):
        if exit_code is not None:
            self.exit_code = ExitCode(exit_code)
        self.message = message
        super().__init__(f"Exit {int(self.exit_code)}: {message}")

class InvalidInputError(CoxCommException):
    """Malformed or out-of-range input: letters, matrices, permutations, files."""
    exit_code = ExitCode.INVALID_INPUT

class NotReducedError(InvalidInputError):
    """A word was required to be reduced and is not."""

class DescentError(InvalidInputError):
    """A lambda function was extended by a generator that is a right descent."""

class MixedSignsError(InvalidInputError):
    """A vector with coordinates of both signs was classified as a root."""

class ResourceLimitError(CoxCommException):
    """A configured budget (class size, down-sets, memo entries) was exhausted."""
    exit_code = ExitCode.RESOURCE_LIMIT

    def __init__(self, message="Resource budget exhausted", budget=None):
        self.budget = budget
        super().__init__(message)

class InvariantViolationError(CoxCommException):
    """An internal invariant check failed; indicates a construction bug."""
    exit_code = ExitCode.INVARIANT_VIOLATION

class UndefinedExtensionError(InvariantViolationError):
    """
    The new root of an extension is not simple, yet no earlier inversion pairs
    positively with it, so no rule assigns it a value.
    """

class OutputFormat(Enum):
    """
    Output formats supported by the command line front end.

    Attributes:
        TEXT: Human-readable text.
        JSON: Schema-stable JSON with big integers as decimal strings.
        DOT: Graphviz DOT (Hasse diagrams only).
    """
    TEXT = "text"
    JSON = "json"
    DOT = "dot"

class RootSign(Enum):
    """Classification of a root as positive or negative."""
    POSITIVE = 1
    NEGATIVE = -1

class ExtensionRule(Enum):
    """
    How a lambda function is extended to the root added by a non-descent.

    Attributes:
        DEPTH: One more than the largest value over earlier roots pairing
            positively with the new root; 1 when none does and the new root
            is simple. Reproduces the depth functions of reduced word posets.
        SIMPLE_FIRST: A simple new root always gets 1, otherwise as DEPTH.
            Disagrees with the depth functions whenever a heap gains a simple
            root on top of a non-commuting predecessor (s1 s2 s1 in A2).
    """
    DEPTH = "depth"
    SIMPLE_FIRST = "simple-first"
