"""
Module containing commutation alphabets, word posets and commutation classes.

Two words over an alphabet are in the same commutation class when one can be
turned into the other by repeatedly swapping adjacent letters that commute.
The word poset P(w) of a word w captures its whole class: the words of the
class are exactly the label sequences of the linear extensions of P(w), and
two words share a class exactly when their word posets are isomorphic.

Nothing in this module depends on any group structure; the Coxeter modules
reuse it with the commutation alphabet of a Coxeter system.

Conventions:

- Symbols are dense integer ids 0..n-1 with display names; every algorithm
  works on ids only.
- Poset elements are 0-based word positions; element i is position i + 1 in
  the usual 1-based notation (DOT and JSON output use the 1-based form).
- Order relations are stored as one integer bit mask per element: bit v of
  `leq[u]` is set iff u <= v.
"""
import json
import logging

from collections import defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import (Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence,
                    Set, Tuple, Union)

import networkx as nx

from .coxcomm_config import Budgets, resolve_budgets
from .coxcomm_types import InvalidInputError, InvariantViolationError, ResourceLimitError

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

def _bits(mask: int) -> Iterator[int]:
    """Yields the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low

@dataclass(frozen=True)
class Alphabet:
    """
    A finite symbol set with a symmetric commutation relation.

    Attributes:
        symbols: Display names; the id of a symbol is its index.
        commutes: Symmetric boolean matrix; the diagonal is stored as False
            because equal symbols never swap.
    """
    symbols: Tuple[str, ...]
    commutes: Tuple[Tuple[bool, ...], ...]
    _masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        n = len(symbols)
        if len(set(symbols)) != n or any(not isinstance(s, str) or not s for s in symbols):
            raise InvalidInputError(f"Symbol names must be distinct non-empty strings: {list(symbols)}")
        if len(self.commutes) != n or any(len(row) != n for row in self.commutes):
            raise InvalidInputError(f"Commutation matrix must be {n}x{n}")

        rows = tuple(tuple(bool(self.commutes[a][b]) and a != b for b in range(n)) for a in range(n))
        for a in range(n):
            for b in range(a + 1, n):
                if rows[a][b] != rows[b][a]:
                    raise InvalidInputError(f"Commutation relation is not symmetric at "
                                            f"({symbols[a]}, {symbols[b]})")

        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "commutes", rows)
        object.__setattr__(self, "_masks", tuple(sum(1 << b for b in range(n) if rows[a][b])
                                                 for a in range(n)))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def from_pairs(cls, symbols: Sequence[str], commuting_pairs: Iterable[Sequence[str]]) -> "Alphabet":
        """Builds an alphabet from symbol names and a list of commuting name pairs."""
        symbols = tuple(symbols)
        if any(not isinstance(s, str) for s in symbols):
            raise InvalidInputError(f"Symbol names must be strings: {list(symbols)}")
        if isinstance(commuting_pairs, (str, bytes)) or not isinstance(commuting_pairs, Iterable):
            raise InvalidInputError(f"Commuting pairs must be a list of symbol pairs, got {commuting_pairs!r}")
        index = {s: i for i, s in enumerate(symbols)}
        n = len(symbols)
        matrix = [[False] * n for _ in range(n)]
        for pair in commuting_pairs:
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InvalidInputError(f"Commuting pairs must have two symbols, got {pair!r}")
            a, b = pair
            if not isinstance(a, str) or not isinstance(b, str):
                raise InvalidInputError(f"Commuting pair {list(pair)} must name symbols as strings")
            if a not in index or b not in index:
                raise InvalidInputError(f"Commuting pair {list(pair)} names an unknown symbol")
            matrix[index[a]][index[b]] = matrix[index[b]][index[a]] = True
        return cls(symbols, tuple(tuple(row) for row in matrix))

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Alphabet":
        """Reads {"symbols": [...], "commuting_pairs": [[a, b], ...]}."""
        if not isinstance(data, dict) or "symbols" not in data:
            raise InvalidInputError("Alphabet JSON must be an object with a 'symbols' list")
        symbols = data["symbols"]
        if not isinstance(symbols, list):
            raise InvalidInputError("'symbols' must be a list of strings")
        return cls.from_pairs(symbols, data.get("commuting_pairs", []))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Alphabet":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise InvalidInputError(f"Cannot read alphabet file {path}: {e}") from e
        return cls.from_json(data)

    def to_json(self) -> Dict[str, Any]:
        n = self.size
        return {
            "symbols": list(self.symbols),
            "commuting_pairs": [[self.symbols[a], self.symbols[b]]
                                for a in range(n) for b in range(a + 1, n) if self.commutes[a][b]],
        }

    @property
    def size(self) -> int:
        return len(self.symbols)

    def commute(self, a: int, b: int) -> bool:
        """True iff a and b are distinct commuting symbols."""
        return bool(self._masks[a] >> b & 1)

    def dependent(self, a: int, b: int) -> bool:
        """True iff a and b are equal or do not commute."""
        return not self._masks[a] >> b & 1

    def independent(self, ids: Iterable[int]) -> bool:
        """True iff the given symbols are pairwise distinct and pairwise commuting."""
        ids = list(ids)
        return all(self.commute(a, b) for i, a in enumerate(ids) for b in ids[i + 1:])

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InvalidInputError(f"Unknown symbol '{name}'. Choose from: {list(self.symbols)}")

    def parse_word(self, text: str) -> Word:
        """
        Parses whitespace or comma separated symbol names. When every symbol
        name is a single character, an unseparated string such as "abcd" is
        read letter by letter.
        """
        tokens = text.replace(",", " ").split()
        if (len(tokens) == 1 and tokens[0] not in self._index
                and all(len(s) == 1 for s in self.symbols)):
            tokens = list(tokens[0])
        return tuple(self.index(t) for t in tokens)

    def format_word(self, word: Sequence[int], sep: str = " ") -> str:
        return sep.join(self.symbols[a] for a in word)

    def validate_word(self, word: Sequence[int]) -> Word:
        word = tuple(word)
        for position, letter in enumerate(word, start=1):
            if isinstance(letter, bool) or not isinstance(letter, int) or not 0 <= letter < self.size:
                raise InvalidInputError(f"Letter {letter!r} at position {position} is not a symbol id "
                                        f"of an alphabet with {self.size} symbols")
        return word

@dataclass(frozen=True)
class WordPoset:
    """
    A finite labeled poset on elements 0..size-1.

    Attributes:
        alphabet: The alphabet the labels come from.
        labels: Element -> symbol id (the labeling s).
        leq: Element u -> bit mask of all v with u <= v (reflexive).
        covers: Pairs (u, v) with v covering u, sorted.
    """
    alphabet: Alphabet
    labels: Tuple[int, ...]
    leq: Tuple[int, ...]
    covers: Tuple[Tuple[int, int], ...]
    _down: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        size = len(self.labels)
        down = [0] * size
        for u in range(size):
            for v in _bits(self.leq[u] & ~(1 << u)):
                down[v] |= 1 << u
        object.__setattr__(self, "_down", tuple(down))

    @classmethod
    def from_relations(cls, labels: Sequence[int], pairs: Iterable[Tuple[int, int]],
                       alphabet: Alphabet) -> "WordPoset":
        """
        Builds the poset generated by the given (smaller, larger) pairs under
        reflexive-transitive closure. The result need not satisfy the word
        poset axioms; check with `verify_word_poset`.
        """
        labels = alphabet.validate_word(labels)
        size = len(labels)
        up = [1 << u for u in range(size)]
        for u, v in pairs:
            if not (0 <= u < size and 0 <= v < size):
                raise InvalidInputError(f"Relation ({u}, {v}) is outside elements 0..{size - 1}")
            up[u] |= 1 << v

        changed = True
        while changed:
            changed = False
            for u in range(size):
                closure = up[u]
                for v in _bits(up[u] & ~(1 << u)):
                    closure |= up[v]
                if closure != up[u]:
                    up[u] = closure
                    changed = True

        for u in range(size):
            for v in _bits(up[u] & ~(1 << u)):
                if up[v] >> u & 1:
                    raise InvalidInputError(f"Relations contain a cycle through elements {u} and {v}")

        return cls(alphabet, labels, tuple(up), _transitive_reduction(up))

    @property
    def size(self) -> int:
        return len(self.labels)

    def less_equal(self, u: int, v: int) -> bool:
        return bool(self.leq[u] >> v & 1)

    def comparable(self, u: int, v: int) -> bool:
        return self.less_equal(u, v) or self.less_equal(v, u)

    def strictly_below(self, v: int) -> int:
        """Bit mask of all u < v."""
        return self._down[v]

    def minimal_elements(self) -> List[int]:
        return [u for u in range(self.size) if self._down[u] == 0]

    def maximal_elements(self) -> List[int]:
        return [u for u in range(self.size) if self.leq[u] == 1 << u]

    def available(self, placed: int) -> List[int]:
        """Elements outside the down-set `placed` whose lower covers all lie in it."""
        return [u for u in range(self.size)
                if not placed >> u & 1 and self._down[u] & ~placed == 0]

    def to_dot(self, name: str = "P") -> str:
        """Hasse diagram in DOT; nodes are positions labeled "pos:symbol"."""
        lines = [f"digraph {name} {{", "\trankdir=BT;"]
        for u, label in enumerate(self.labels):
            lines.append(f'\t{u + 1} [label="{u + 1}:{self.alphabet.symbols[label]}"];')
        for u, v in self.covers:
            lines.append(f"\t{u + 1} -> {v + 1};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_networkx(self) -> nx.DiGraph:
        """The Hasse diagram as a networkx DiGraph on 1-based positions."""
        graph = nx.DiGraph()
        for u, label in enumerate(self.labels):
            graph.add_node(u + 1, symbol=self.alphabet.symbols[label])
        graph.add_edges_from((u + 1, v + 1) for u, v in self.covers)
        return graph

    def to_json(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "labels": [self.alphabet.symbols[a] for a in self.labels],
            "covers": [[u + 1, v + 1] for u, v in self.covers],
        }

def _transitive_reduction(up: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    """v covers u iff u < v and nothing lies strictly between them."""
    size = len(up)
    down = [0] * size
    for u in range(size):
        for v in _bits(up[u] & ~(1 << u)):
            down[v] |= 1 << u

    covers = []
    for u in range(size):
        strict_up = up[u] & ~(1 << u)
        for v in _bits(strict_up):
            if strict_up & down[v] == 0:
                covers.append((u, v))
    return tuple(covers)

def build_poset(w: Sequence[int], a: Alphabet) -> WordPoset:
    """
    Builds P(w): i -> j whenever i <= j and w_i, w_j are equal or do not
    commute, closed reflexively and transitively. Since every relation points
    forward, i <=_w j implies i <= j and one left-to-right pass computes the
    closure.
    """
    w = a.validate_word(w)
    k = len(w)
    down = [0] * k
    for j in range(k):
        for i in range(j):
            if a.dependent(w[i], w[j]):
                down[j] |= down[i] | (1 << i)

    up = [1 << u for u in range(k)]
    for v in range(k):
        for u in _bits(down[v]):
            up[u] |= 1 << v

    logger.debug(f"Built poset of a word of length {k}")
    return WordPoset(a, w, tuple(up), _transitive_reduction(up))

def verify_word_poset(p: WordPoset, a: Alphabet) -> bool:
    """
    Checks that p is a partial order whose covers are its transitive
    reduction, and that both word poset axioms hold:

    (a) elements with equal or non-commuting labels are comparable;
    (b) a cover joins labels that are equal or do not commute.
    """
    size = p.size
    if len(p.leq) != size or any(not 0 <= x < a.size for x in p.labels):
        logger.debug("Poset shape does not match its labels or alphabet")
        return False

    for u in range(size):
        if not p.leq[u] >> u & 1 or p.leq[u] >> size:
            logger.debug(f"Element {u} breaks reflexivity or has out-of-range relations")
            return False
        for v in _bits(p.leq[u] & ~(1 << u)):
            if p.leq[v] >> u & 1:
                logger.debug(f"Elements {u} and {v} break antisymmetry")
                return False
            if p.leq[v] & ~p.leq[u]:
                logger.debug(f"Elements {u} and {v} break transitivity")
                return False

    if tuple(sorted(p.covers)) != _transitive_reduction(p.leq):
        logger.debug("Covers are not the transitive reduction of the order")
        return False

    for u in range(size):
        for v in range(u + 1, size):
            if a.dependent(p.labels[u], p.labels[v]) and not p.comparable(u, v):
                logger.debug(f"Axiom (a) fails for incomparable elements {u} and {v}")
                return False

    for u, v in p.covers:
        if a.commute(p.labels[u], p.labels[v]):
            logger.debug(f"Axiom (b) fails for cover {u} < {v}")
            return False

    return True

def linear_extensions(p: WordPoset, budgets: Optional[Budgets] = None) -> Iterator[Word]:
    """
    Yields the word w(e) of every linear extension e of p, each once.

    Extensions are built by backtracking over the currently minimal elements,
    smallest element id first, so the order is deterministic.
    """
    limit = resolve_budgets(budgets).max_class_size
    size = p.size
    if size == 0:
        yield ()
        return

    full = (1 << size) - 1
    produced = 0
    chosen: List[int] = []
    placed = 0
    stack = [iter(p.available(0))]
    while stack:
        u = next(stack[-1], None)
        if u is None:
            stack.pop()
            if chosen:
                placed &= ~(1 << chosen.pop())
            continue

        chosen.append(u)
        placed |= 1 << u
        if placed == full:
            produced += 1
            if produced > limit:
                raise ResourceLimitError(f"Linear extension enumeration exceeded {limit} words", limit)
            yield tuple(p.labels[x] for x in chosen)
            placed &= ~(1 << chosen.pop())
        else:
            stack.append(iter(p.available(placed)))

def count_linear_extensions(p: WordPoset, budgets: Optional[Budgets] = None) -> int:
    """
    Counts linear extensions exactly by dynamic programming over down-sets.

    Down-sets are bit masks; layer k holds every down-set of size k with the
    number of ways to reach it from the empty set.
    """
    limit = resolve_budgets(budgets).max_down_sets
    layer: Dict[int, int] = {0: 1}
    visited = 1
    for _ in range(p.size):
        successors: Dict[int, int] = defaultdict(int)
        for ideal, ways in layer.items():
            for u in p.available(ideal):
                successors[ideal | 1 << u] += ways
        visited += len(successors)
        if visited > limit:
            raise ResourceLimitError(f"Down-set lattice exceeded {limit} nodes", limit)
        layer = successors

    logger.debug(f"Counted linear extensions over {visited} down-sets")
    return sum(layer.values())

def commutation_class_bfs(w: Sequence[int], a: Alphabet, budgets: Optional[Budgets] = None) -> Set[Word]:
    """Breadth-first closure of {w} under swaps of adjacent commuting letters."""
    limit = resolve_budgets(budgets).max_class_size
    start = a.validate_word(w)
    seen = {start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for i in range(len(word) - 1):
            if a.commute(word[i], word[i + 1]):
                swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                if swapped not in seen:
                    seen.add(swapped)
                    if len(seen) > limit:
                        raise ResourceLimitError(f"Commutation class exceeded {limit} words", limit)
                    queue.append(swapped)
    return seen

def canonical_word_of_poset(p: WordPoset) -> Word:
    """
    The lexicographically least word of the class of p: repeatedly remove the
    available element with the smallest label. Equal labels are comparable,
    so the smallest label picks a unique element.
    """
    placed = 0
    word = []
    for _ in range(p.size):
        u = min(p.available(placed), key=lambda x: p.labels[x])
        word.append(p.labels[u])
        placed |= 1 << u
    return tuple(word)

def canonical_word(w: Sequence[int], a: Alphabet) -> Word:
    return canonical_word_of_poset(build_poset(w, a))

def same_class(x: Sequence[int], y: Sequence[int], a: Alphabet) -> bool:
    return len(x) == len(y) and canonical_word(x, a) == canonical_word(y, a)

def posets_isomorphic(p: WordPoset, q: WordPoset) -> bool:
    """
    Label-preserving isomorphism test for word posets over one alphabet.
    Isomorphism classes of word posets are commutation classes, so comparing
    the canonical words of the two classes decides it.
    """
    if p.size != q.size or sorted(p.labels) != sorted(q.labels):
        return False
    return canonical_word_of_poset(p) == canonical_word_of_poset(q)

def depth_function(p: WordPoset) -> Tuple[int, ...]:
    """dp(u) = number of elements of the longest chain ending at u."""
    depth = [0] * p.size
    # a proper down-set is strictly smaller, so this is a topological order
    for u in sorted(range(p.size), key=lambda x: bin(p.strictly_below(x)).count("1")):
        depth[u] = 1 + max((depth[v] for v in _bits(p.strictly_below(u))), default=0)
    return tuple(depth)

def depth_layers(p: WordPoset) -> List[FrozenSet[int]]:
    """
    Groups elements by depth. Every layer must be an antichain whose labels
    are pairwise distinct and pairwise commuting.
    """
    depth = depth_function(p)
    layers: List[Set[int]] = [set() for _ in range(max(depth, default=0))]
    for u, k in enumerate(depth):
        layers[k - 1].add(u)

    for k, layer in enumerate(layers, start=1):
        members = sorted(layer)
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                if p.comparable(u, v):
                    raise InvariantViolationError(f"Depth layer {k} has comparable elements {u} and {v}")
                if not p.alphabet.commute(p.labels[u], p.labels[v]):
                    raise InvariantViolationError(f"Depth layer {k} has dependent labels at {u} and {v}")

    return [frozenset(layer) for layer in layers]
