"""
Module containing configuration classes for coxcomm.

This module provides the resource budgets every enumerating or memoizing
operation honours, and the run configuration assembled by the command line
front end.

Counting linear extensions and reduced words is #P-hard in general, and the
groups handled here may be infinite, so every potentially unbounded loop is
guarded by a budget that fails loudly with a `ResourceLimitError` instead of
running forever.

Internal implementation details are defined in `_core_types.py` and should
not be used directly by external callers.
"""
import os
import logging

from typing import Mapping, Optional, Union

from .coxcomm_types import OutputFormat

logger = logging.getLogger(__name__)

BUDGET_MEMO_ENV = "COXCOMM_BUDGET_MEMO"

DEFAULT_MAX_CLASS_SIZE = 10 ** 6
DEFAULT_MAX_DOWN_SETS = 10 ** 7
DEFAULT_MAX_MEMO_ENTRIES = 10 ** 7

class Budgets:
    """
    Encapsulates the resource budgets shared by all operations.

    Attributes:
        max_class_size (int): Most words a commutation class enumeration, a
            BFS closure or a reduced-word enumeration may produce.
        max_down_sets (int): Most order ideals the linear-extension counter
            may visit.
        max_memo_entries (int): Most entries one call may add to a memo
            table (reduced-word counts, C(w), recurrence values), and most
            elements an enumeration may list.
    """
    def __init__(self,
                 max_class_size: int = DEFAULT_MAX_CLASS_SIZE,
                 max_down_sets: int = DEFAULT_MAX_DOWN_SETS,
                 max_memo_entries: int = DEFAULT_MAX_MEMO_ENTRIES):
        self.max_class_size = self._validate_budget("max_class_size", max_class_size)
        self.max_down_sets = self._validate_budget("max_down_sets", max_down_sets)
        self.max_memo_entries = self._validate_budget("max_memo_entries", max_memo_entries)

    @staticmethod
    def _validate_budget(name: str, value: Union[int, str]) -> int:
        """Validates and returns a positive integer budget."""
        if isinstance(value, bool):
            raise TypeError(f"{name} must be an integer")
        if isinstance(value, str):
            try:
                value = int(value.strip())
            except ValueError:
                raise ValueError(f"Invalid {name} '{value}'. Must be a positive integer.")
        if not isinstance(value, int):
            raise TypeError(f"{name} must be an integer")
        if value < 1:
            raise ValueError(f"{name} must be positive, got {value}")
        return value

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides) -> "Budgets":
        """
        Builds budgets from defaults, the COXCOMM_BUDGET_MEMO environment
        variable, and explicit overrides (highest priority, None ignored).
        """
        environ = os.environ if environ is None else environ
        settings = {}

        memo = environ.get(BUDGET_MEMO_ENV)
        if memo is not None and memo.strip() != "":
            settings["max_memo_entries"] = cls._validate_budget(BUDGET_MEMO_ENV, memo)
            logger.debug(f"Memo budget from {BUDGET_MEMO_ENV}: {settings['max_memo_entries']}")

        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)

    def __repr__(self) -> str:
        return (f"Budgets(max_class_size={self.max_class_size}, max_down_sets={self.max_down_sets}, "
                f"max_memo_entries={self.max_memo_entries})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Budgets):
            return NotImplemented
        return (self.max_class_size, self.max_down_sets, self.max_memo_entries) == \
               (other.max_class_size, other.max_down_sets, other.max_memo_entries)

def resolve_budgets(budgets: Optional[Budgets]) -> Budgets:
    """Returns the given budgets, or the environment-aware defaults."""
    return budgets if budgets is not None else Budgets.from_env()

class RunConfig:
    """
    Configuration of a single command line run.

    Attributes:
        command (str): The command being run, e.g. "poset" or "coxeter cset".
        output_format (OutputFormat): Exactly one output format.
        budgets (Budgets): Resource budgets for the run.
        seed (Optional[int]): Seed for the sampling subcommands; None elsewhere.
    """
    def __init__(self,
                 command: str,
                 output_format: Optional[Union[OutputFormat, str]] = OutputFormat.TEXT,
                 budgets: Optional[Budgets] = None,
                 seed: Optional[int] = None):
        self.command = command
        self.output_format = self._validate_format(output_format or OutputFormat.TEXT)
        self.budgets = resolve_budgets(budgets)
        self.seed = seed

    def _validate_format(self, output_format: Union[OutputFormat, str]) -> OutputFormat:
        """Validates and returns an OutputFormat enum member based on input."""
        if isinstance(output_format, OutputFormat):
            return output_format
        elif isinstance(output_format, str):
            try:
                return OutputFormat(output_format.lower())
            except ValueError:
                raise ValueError(f"Invalid format '{output_format}'. Choose from: {[f.value for f in OutputFormat]}")

        raise TypeError("Output format must be of type OutputFormat or str")
