"""
Module containing permutations in one-line notation as elements of type A.

The symmetric group S_n is the Coxeter group A_{n-1} with s_i the adjacent
transposition (i, i+1). Right multiplication by s_i swaps the entries at
positions i and i+1 of the one-line notation, so s1 s2 is [2314] and the
right descents of a permutation are the positions i with p(i) > p(i+1).
"""
import logging

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, List, Optional, Tuple

from .coxcomm_types import InvalidInputError
from .coxeter import CoxeterSystem, GroupElement, canonical_reduced_word, element_from_word
from .trace_core import Word

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} in one-line notation."""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidInputError(f"{list(images)} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Reads "4231" (every entry one digit) or "10,3,2,...", comma or space separated."""
        text = text.strip()
        try:
            if "," in text or " " in text:
                images = [int(t) for t in text.replace(",", " ").split()]
            else:
                images = [int(ch) for ch in text]
        except ValueError:
            raise InvalidInputError(f"Invalid permutation '{text}'. Use forms like 4231 or 10,3,2,1,...")
        return cls(tuple(images))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(i) for i in self.images)
        return ",".join(str(i) for i in self.images)

    def apply_generator(self, i: int) -> "Permutation":
        """p s_i for a 0-based generator index i: swaps positions i+1 and i+2."""
        if not 0 <= i < self.n - 1:
            raise InvalidInputError(f"Generator index {i} outside 0..{self.n - 2}")
        images = list(self.images)
        images[i], images[i + 1] = images[i + 1], images[i]
        return Permutation(tuple(images))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for position, value in enumerate(self.images, start=1):
            images[value - 1] = position
        return Permutation(tuple(images))

    def inversion_count(self) -> int:
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if self.images[i] > self.images[j])

    def descent_positions(self) -> List[int]:
        """0-based i with p(i+1) > p(i+2), i.e. right descents s_i."""
        return [i for i in range(self.n - 1) if self.images[i] > self.images[i + 1]]

def reduced_word_of_permutation(p: Permutation) -> Word:
    """Bubble sort: word(p) = word(p s_i) followed by s_i for the first descent i."""
    letters = []
    while True:
        descents = p.descent_positions()
        if not descents:
            break
        letters.append(descents[0])
        p = p.apply_generator(descents[0])
    return tuple(reversed(letters))

def all_permutations(n: int) -> Iterator[Permutation]:
    for images in permutations(range(1, n + 1)):
        yield Permutation(images)

def _check_type_a(system: CoxeterSystem, n: Optional[int] = None) -> None:
    if not system.is_type_a():
        raise InvalidInputError(f"{system!r} is not of type A")
    if n is not None and system.n != n - 1:
        raise InvalidInputError(f"Permutations of {n} letters need type A{n - 1}, got rank {system.n}")

def perm_to_element(system: CoxeterSystem, p: Permutation) -> GroupElement:
    _check_type_a(system, p.n)
    return element_from_word(system, reduced_word_of_permutation(p))

def element_to_perm(g: GroupElement) -> Permutation:
    _check_type_a(g.system)
    p = Permutation.identity(g.system.n + 1)
    for s in canonical_reduced_word(g):
        p = p.apply_generator(s)
    return p

def parse_permutation(system: CoxeterSystem, text: str) -> GroupElement:
    return perm_to_element(system, Permutation.parse(text))
