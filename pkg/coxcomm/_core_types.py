"""
Internal implementation details for coxcomm.

This module contains enumerations and helpers that are used internally by the
package. These definitions are not intended for external use and should not be
relied upon by outside callers.

External callers should instead use the types and exceptions defined in
`coxcomm_types.py` to interact with the library.
"""
import math
import re

from enum import Enum, IntEnum
from typing import List, Tuple, Union

# Coxeter matrix entries: positive integers, or math.inf for "no relation".
Order = Union[int, float]
INFINITY: float = math.inf

class ExitCode(IntEnum):
    """
    Process exit codes used by the command line front end.

    Attributes:
        OK: Successful run.
        INVALID_INPUT: Parse or validation failure.
        RESOURCE_LIMIT: A configured budget was exhausted.
        INVARIANT_VIOLATION: An internal invariant check failed.
    """
    OK = 0
    INVALID_INPUT = 2
    RESOURCE_LIMIT = 3
    INVARIANT_VIOLATION = 4

class CoxeterFamily(Enum):
    """
    Enumeration of the named Coxeter families, keyed by their type letter.

    Each member knows how to lay out its Coxeter diagram as a list of
    (generator, generator, order) edges on 0-based generator indices; pairs
    that are not listed commute (order 2).
    """
    A = "A"
    B = "B"
    D = "D"
    E = "E"
    F = "F"
    H = "H"
    I = "I"

    def min_rank(self) -> int:
        return {"A": 1, "B": 2, "D": 4, "E": 6, "F": 4, "H": 3, "I": 2}[self.value]

    def diagram(self, rank: int, param: Order = 0) -> List[Tuple[int, int, Order]]:
        """Returns the edges of the Coxeter diagram for the given rank."""
        if rank < self.min_rank():
            raise ValueError(f"Type {self.value} needs rank at least {self.min_rank()}, got {rank}")

        chain = [(i, i + 1, 3) for i in range(rank - 1)]

        if self is CoxeterFamily.A:
            return chain
        if self is CoxeterFamily.B:
            # Bourbaki: the double bond sits at the end of the chain
            return chain[:-1] + [(rank - 2, rank - 1, 4)]
        if self is CoxeterFamily.D:
            return [(i, i + 1, 3) for i in range(rank - 2)] + [(rank - 3, rank - 1, 3)]
        if self is CoxeterFamily.E:
            if rank not in (6, 7, 8):
                raise ValueError(f"Type E exists only in ranks 6, 7 and 8, got {rank}")
            # Bourbaki numbering: 1-3-4-5-...-n with 2 attached to 4
            return [(0, 2, 3), (1, 3, 3)] + [(i, i + 1, 3) for i in range(2, rank - 1)]
        if self is CoxeterFamily.F:
            if rank != 4:
                raise ValueError(f"Type F exists only in rank 4, got {rank}")
            return [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
        if self is CoxeterFamily.H:
            if rank not in (3, 4):
                raise ValueError(f"Type H exists only in ranks 3 and 4, got {rank}")
            return [(0, 1, 5)] + [(i, i + 1, 3) for i in range(1, rank - 1)]

        # I2(m)
        if rank != 2:
            raise ValueError(f"Type I exists only in rank 2, got {rank}")
        if param != INFINITY and (not isinstance(param, int) or param < 2):
            raise ValueError(f"I2 needs an order >= 2 or 'inf', got {param!r}")
        return [(0, 1, param)]

_NAMED_TYPE = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*(?::\s*(\w+))?\s*$")

def parse_named_type(spec: str) -> Tuple[CoxeterFamily, int, Order]:
    """
    Parses a named type such as "A3", "B4", "H3" or "I2:7" ("I2:inf" or
    "I2:0" for the infinite dihedral group).
    """
    match = _NAMED_TYPE.match(spec)
    if not match:
        raise ValueError(f"Invalid Coxeter type '{spec}'. Expected forms like A3, B4, H3, I2:7")

    letter, rank_text, param_text = match.groups()
    try:
        family = CoxeterFamily(letter.upper())
    except ValueError:
        raise ValueError(f"Unknown Coxeter family '{letter}'. Choose from: {[f.value for f in CoxeterFamily]}")

    param: Order = 0
    if family is CoxeterFamily.I:
        if param_text is None:
            raise ValueError("Type I2 needs an order, e.g. I2:5")
        param = order_from_text(param_text)
    elif param_text is not None:
        raise ValueError(f"Type {family.value} takes no ':' parameter")

    return family, int(rank_text), param

def order_from_text(text: str) -> Order:
    """Reads a single Coxeter matrix entry; 0, 'inf' and '∞' mean infinity."""
    text = text.strip().lower()
    if text in ("inf", "infinity", "∞", "0"):
        return INFINITY
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"Invalid Coxeter matrix entry '{text}'")

def order_from_json(value: object) -> Order:
    """JSON matrices encode infinity as 0."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"Coxeter matrix entries must be integers, got {value!r}")
    return INFINITY if value == 0 else value

def order_to_json(value: Order) -> int:
    return 0 if value == INFINITY else int(value)

def matrix_from_diagram(rank: int, edges: List[Tuple[int, int, Order]]) -> List[List[Order]]:
    """Builds the full Coxeter matrix from diagram edges; unlisted pairs get order 2."""
    m: List[List[Order]] = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for i, j, order in edges:
        m[i][j] = order
        m[j][i] = order
    return m

def default_generator_names(rank: int) -> List[str]:
    return [f"s{i + 1}" for i in range(rank)]

