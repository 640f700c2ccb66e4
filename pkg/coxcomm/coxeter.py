"""
Module containing Coxeter systems, their reflection representation and roots.

A Coxeter system is given by a symmetric matrix of orders m[s][s'] (1 on the
diagonal, an integer >= 2 or infinity elsewhere). It acts on V = R^S through
s r_{s'} = r_{s'} - 2 (r_s, r_{s'}) r_s, where the bilinear form has
(r_s, r_s) = 1, (r_s, r_{s'}) = -cos(pi/m) and -1 for infinite m. All form
entries and root coordinates are exact `Scalar` values.

Group elements are exact action matrices in the simple-root basis, so the
same code handles finite and infinite groups. Every element also carries the
inverse matrix, updated together with the action, which makes left descents
as cheap as right descents.

The module provides:

- `CoxeterSystem`, `GroupElement`, `RootVec`, `MemoCache` and `MemoCharge`.
- Reflection, application, composition and sign classification of roots.
- Reduced-word recognition by scanning prefix roots, descents, canonical
  reduced words, inversion sets, reduced-word counting and enumeration.
"""
import json
import logging
import threading

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import (Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple,
                    Union)

from ._core_types import (INFINITY, Order, default_generator_names, matrix_from_diagram,
                          order_from_json, order_to_json, parse_named_type)
from .coxcomm_config import Budgets, resolve_budgets
from .coxcomm_types import (InvalidInputError, MixedSignsError, NotReducedError,
                            ResourceLimitError, RootSign)
from .scalar import Scalar, ScalarContext, make_context
from .trace_core import Alphabet, Word

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Scalar, ...], ...]

class MemoCache:
    """
    A memo table shared by all callers of one system.

    Entries are written under a lock, so the first value stored for a key
    wins and readers never see a partial entry; concurrent callers may
    compute the same value twice. Budgets are charged per call through
    `charge`: entries left by earlier calls are free to reuse.
    """
    def __init__(self, name: str):
        self.name = name
        self._data: Dict[Any, Any] = {}
        self._lock = threading.Lock()

    def get(self, key, default=None):
        return self._data.get(key, default)

    def __contains__(self, key) -> bool:
        return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def charge(self, limit: int) -> "MemoCharge":
        """A writer for one call; only the entries that call inserts count against limit."""
        return MemoCharge(self, limit)

    def _insert(self, key, value, charge: "MemoCharge"):
        with self._lock:
            if key in self._data:
                return self._data[key]
            if charge.inserted >= charge.limit:
                raise ResourceLimitError(f"Memo table '{self.name}' exceeded {charge.limit} entries", charge.limit)
            charge.inserted += 1
            self._data[key] = value
            return value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()

class MemoCharge:
    """Counts the entries one call adds to a shared `MemoCache`."""
    def __init__(self, cache: MemoCache, limit: int):
        self.cache = cache
        self.limit = limit
        self.inserted = 0

    def get(self, key, default=None):
        return self.cache.get(key, default)

    def put(self, key, value):
        return self.cache._insert(key, value, self)

@dataclass(frozen=True)
class RootVec:
    """A vector of V in simple-root coordinates."""
    coords: Tuple[Scalar, ...]

    def __add__(self, other: "RootVec") -> "RootVec":
        return RootVec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RootVec":
        return RootVec(tuple(-a for a in self.coords))

    def __sub__(self, other: "RootVec") -> "RootVec":
        return self + (-other)

    def scale(self, k: Union[int, Fraction, Scalar]) -> "RootVec":
        return RootVec(tuple(a * k for a in self.coords))

    def simple_index(self) -> Optional[int]:
        """The generator s when this vector is the simple root r_s, else None."""
        found = None
        for s, a in enumerate(self.coords):
            if a.is_zero():
                continue
            if found is not None or a != 1:
                return None
            found = s
        return found

    def is_simple(self) -> bool:
        return self.simple_index() is not None

    def to_json(self) -> List[Dict[str, list]]:
        return [a.to_json() for a in self.coords]

    @classmethod
    def from_json(cls, ctx: ScalarContext, data: List[Dict[str, list]], n: int) -> "RootVec":
        if not isinstance(data, list) or len(data) != n:
            raise InvalidInputError(f"A root needs {n} coordinates, got {data!r}")
        return cls(tuple(Scalar.from_json(ctx, a) for a in data))

    def __str__(self) -> str:
        terms = []
        for s, a in enumerate(self.coords):
            if a.is_zero():
                continue
            text = str(a)
            if a == 1:
                terms.append(f"r{s + 1}")
            elif " + " in text:
                terms.append(f"({text})*r{s + 1}")
            else:
                terms.append(f"{text}*r{s + 1}")
        return " + ".join(terms) if terms else "0"

class CoxeterSystem:
    """
    A Coxeter system with its exact reflection representation.

    Attributes:
        n (int): Number of generators.
        names (Tuple[str, ...]): Generator display names.
        m (Tuple[Tuple[Order, ...], ...]): Symmetric order matrix, math.inf
            for infinite orders.
        ctx (ScalarContext): Field of the bilinear form.
        B (Matrix): The bilinear form on simple roots.
        alphabet (Alphabet): Generators as symbols; s, s' commute iff m = 2.
        label (Optional[str]): The named type the system was built from.
    """
    def __init__(self, orders: Sequence[Sequence[Order]], names: Optional[Sequence[str]] = None,
                 label: Optional[str] = None):
        self.m = self._validate_orders(orders)
        self.n = len(self.m)
        self.names = tuple(names) if names is not None else tuple(default_generator_names(self.n))
        if len(self.names) != self.n:
            raise InvalidInputError(f"{len(self.names)} generator names for {self.n} generators")
        self.label = label

        finite = {self.m[s][t] for s in range(self.n) for t in range(self.n)
                  if s != t and self.m[s][t] != INFINITY}
        self.ctx: ScalarContext = make_context(finite)

        half = Fraction(1, 2)
        rows = []
        for s in range(self.n):
            row = []
            for t in range(self.n):
                order = self.m[s][t]
                if s == t:
                    row.append(self.ctx.one())
                elif order == INFINITY:
                    row.append(self.ctx.rational(-1))
                else:
                    row.append(-(self.ctx.two_cos_pi_over(order) * half))
            rows.append(tuple(row))
        self.B: Matrix = tuple(rows)
        # nonzero entries of 2B per row; reflections only touch these
        self._two_b = tuple(tuple((t, b * 2) for t, b in enumerate(row) if not b.is_zero())
                            for row in self.B)

        self.alphabet = Alphabet(self.names, tuple(tuple(s != t and self.m[s][t] == 2
                                                          for t in range(self.n))
                                                    for s in range(self.n)))
        self._memos: Dict[str, MemoCache] = {}
        self._memo_lock = threading.Lock()
        self._identity = GroupElement(self, _identity_matrix(self.ctx, self.n),
                                      _identity_matrix(self.ctx, self.n))
        self._generators = tuple(self._identity.times_generator(s) for s in range(self.n))

        logger.debug(f"Built Coxeter system {self.label or self.n} over field N={self.ctx.N}")

    @staticmethod
    def _validate_orders(orders: Sequence[Sequence[Order]]) -> Tuple[Tuple[Order, ...], ...]:
        n = len(orders)
        if n == 0:
            raise InvalidInputError("A Coxeter matrix needs at least one generator")
        if any(len(row) != n for row in orders):
            raise InvalidInputError("Coxeter matrix must be square")
        for s in range(n):
            for t in range(n):
                order = orders[s][t]
                if s == t:
                    if order != 1:
                        raise InvalidInputError(f"Diagonal entry m[{s}][{s}] must be 1, got {order!r}")
                    continue
                if order != orders[t][s]:
                    raise InvalidInputError(f"Coxeter matrix is not symmetric at ({s}, {t})")
                if order == INFINITY:
                    continue
                if isinstance(order, bool) or not isinstance(order, int) or order < 2:
                    raise InvalidInputError(f"Off-diagonal entry m[{s}][{t}] must be >= 2 or infinite, "
                                            f"got {order!r}")
        return tuple(tuple(1 if s == t else orders[s][t] for t in range(n)) for s in range(n))

    @classmethod
    def named(cls, spec: str) -> "CoxeterSystem":
        """Builds a named system: "A3", "B4", "D5", "E6", "F4", "H3", "I2:7", "I2:inf"."""
        try:
            family, rank, param = parse_named_type(spec)
            edges = family.diagram(rank, param)
        except ValueError as e:
            raise InvalidInputError(str(e)) from e
        return cls(matrix_from_diagram(rank, edges), label=spec.strip().upper().replace("INF", "inf"))

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CoxeterSystem":
        """Reads {"generators": [...], "matrix": [[...]]} with 0 encoding infinity."""
        if not isinstance(data, dict) or "matrix" not in data:
            raise InvalidInputError("Coxeter JSON must be an object with a 'matrix'")
        try:
            matrix = [[order_from_json(v) for v in row] for row in data["matrix"]]
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"Invalid Coxeter matrix: {e}") from e
        names = data.get("generators")
        if names is not None and (not isinstance(names, list) or any(not isinstance(s, str) for s in names)):
            raise InvalidInputError(f"'generators' must be a list of strings, got {names!r}")
        return cls(matrix, names=names)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CoxeterSystem":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise InvalidInputError(f"Cannot read Coxeter matrix file {path}: {e}") from e
        return cls.from_json(data)

    def to_json(self) -> Dict[str, Any]:
        return {"generators": list(self.names),
                "matrix": [[order_to_json(v) for v in row] for row in self.m]}

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.label or self.to_json()})"

    def memo(self, name: str) -> MemoCache:
        """The shared memo table with the given name, created on first use."""
        with self._memo_lock:
            if name not in self._memos:
                self._memos[name] = MemoCache(name)
            return self._memos[name]

    def commute(self, s: int, t: int) -> bool:
        return self.alphabet.commute(s, t)

    def is_type_a(self) -> bool:
        return all(self.m[s][t] == (1 if s == t else 3 if abs(s - t) == 1 else 2)
                   for s in range(self.n) for t in range(self.n))

    def identity(self) -> "GroupElement":
        return self._identity

    def simple_root(self, s: int) -> RootVec:
        self._check_generator(s)
        return RootVec(tuple(self.ctx.one() if t == s else self.ctx.zero() for t in range(self.n)))

    def form(self, r: RootVec, q: RootVec) -> Scalar:
        """The bilinear form (r, q)."""
        total = self.ctx.zero()
        for s, a in enumerate(r.coords):
            if a.is_zero():
                continue
            for t, b in enumerate(self.B[s]):
                if not b.is_zero() and not q.coords[t].is_zero():
                    total = total + a * b * q.coords[t]
        return total

    def parse_word(self, text: str) -> Word:
        """Parses generator names ("s1,s2,s1") or 1-based indices ("1 2 1")."""
        letters = []
        for token in text.replace(",", " ").split():
            if token in self.alphabet.symbols:
                letters.append(self.alphabet.index(token))
            elif token.isdigit() and 1 <= int(token) <= self.n:
                letters.append(int(token) - 1)
            else:
                raise InvalidInputError(f"Unknown generator '{token}'. Choose from: {list(self.names)}")
        return tuple(letters)

    def format_word(self, word: Sequence[int], sep: str = " ") -> str:
        return self.alphabet.format_word(word, sep)

    def _check_generator(self, s: int) -> None:
        if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < self.n:
            raise InvalidInputError(f"Generator index {s!r} outside 0..{self.n - 1}")

def _identity_matrix(ctx: ScalarContext, n: int) -> Matrix:
    return tuple(tuple(ctx.one() if i == j else ctx.zero() for j in range(n)) for i in range(n))

def _matmul(a: Matrix, b: Matrix, zero: Scalar) -> Matrix:
    n = len(a)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            total = zero
            for k in range(n):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    total = total + a[i][k] * b[k][j]
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)

class GroupElement:
    """
    An element of W as its exact action on V, together with the inverse
    action. Column s of `action` is w r_s.
    """
    __slots__ = ("system", "action", "inverse_action", "_hash", "_word")

    def __init__(self, system: CoxeterSystem, action: Matrix, inverse_action: Matrix):
        self.system = system
        self.action = action
        self.inverse_action = inverse_action
        self._hash = hash(action)
        self._word: Optional[Word] = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system is other.system and self._hash == other._hash and self.action == other.action

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __repr__(self) -> str:
        word = canonical_reduced_word(self)
        return f"GroupElement({self.system.format_word(word, ',') or 'e'})"

    def column(self, s: int) -> RootVec:
        return RootVec(tuple(row[s] for row in self.action))

    def inverse_column(self, s: int) -> RootVec:
        return RootVec(tuple(row[s] for row in self.inverse_action))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.system, self.inverse_action, self.action)

    def is_identity(self) -> bool:
        return self == self.system.identity()

    def times_generator(self, s: int) -> "GroupElement":
        """w s: columns of the action and row s of the inverse change."""
        two_b = self.system._two_b[s]
        return GroupElement(self.system,
                            _reflect_columns(self.action, s, two_b),
                            _reflect_row(self.inverse_action, s, two_b))

    def generator_times(self, s: int) -> "GroupElement":
        """s w: row s of the action and columns of the inverse change."""
        two_b = self.system._two_b[s]
        return GroupElement(self.system,
                            _reflect_row(self.action, s, two_b),
                            _reflect_columns(self.inverse_action, s, two_b))

def _reflect_columns(matrix: Matrix, s: int, two_b) -> Matrix:
    """M S_s: column t becomes M[:, t] - 2B[s][t] M[:, s]."""
    rows = []
    for row in matrix:
        pivot = row[s]
        if pivot.is_zero():
            rows.append(row)
            continue
        new_row = list(row)
        for t, b in two_b:
            new_row[t] = new_row[t] - b * pivot
        rows.append(tuple(new_row))
    return tuple(rows)

def _reflect_row(matrix: Matrix, s: int, two_b) -> Matrix:
    """S_s M: row s becomes M[s, :] - sum_k 2B[s][k] M[k, :]."""
    n = len(matrix)
    new_row = list(matrix[s])
    for k, b in two_b:
        source = matrix[k]
        for j in range(n):
            if not source[j].is_zero():
                new_row[j] = new_row[j] - b * source[j]
    return matrix[:s] + (tuple(new_row),) + matrix[s + 1:]

def build_system(orders: Sequence[Sequence[Order]], names: Optional[Sequence[str]] = None) -> CoxeterSystem:
    return CoxeterSystem(orders, names)

def reflect(system: CoxeterSystem, s: int, r: RootVec) -> RootVec:
    """s r = r - 2 (r_s, r) r_s; only coordinate s changes."""
    system._check_generator(s)
    if len(r.coords) != system.n:
        raise InvalidInputError(f"Root has {len(r.coords)} coordinates, system has {system.n}")
    coords = list(r.coords)
    for t, b in system._two_b[s]:
        if not r.coords[t].is_zero():
            coords[s] = coords[s] - b * r.coords[t]
    return RootVec(tuple(coords))

def generator_element(system: CoxeterSystem, s: int) -> GroupElement:
    system._check_generator(s)
    return system._generators[s]

def element_from_word(system: CoxeterSystem, word: Sequence[int]) -> GroupElement:
    g = system.identity()
    for s in word:
        system._check_generator(s)
        g = g.times_generator(s)
    return g

def apply(g: GroupElement, r: RootVec) -> RootVec:
    zero = g.system.ctx.zero()
    coords = []
    for row in g.action:
        total = zero
        for a, b in zip(row, r.coords):
            if not a.is_zero() and not b.is_zero():
                total = total + a * b
        coords.append(total)
    return RootVec(tuple(coords))

def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.system is not h.system:
        raise InvalidInputError("Cannot compose elements of different Coxeter systems")
    zero = g.system.ctx.zero()
    return GroupElement(g.system, _matmul(g.action, h.action, zero),
                        _matmul(h.inverse_action, g.inverse_action, zero))

def root_sign(r: RootVec) -> RootSign:
    """Positive if every coordinate is >= 0, negative if every one is <= 0."""
    positive = negative = False
    for a in r.coords:
        sign = a.sign()
        positive |= sign > 0
        negative |= sign < 0
    if positive and negative:
        raise MixedSignsError(f"Vector {r} has coordinates of both signs; it is not a root")
    if not positive and not negative:
        raise MixedSignsError("The zero vector is not a root")
    return RootSign.POSITIVE if positive else RootSign.NEGATIVE

def is_reduced(system: CoxeterSystem, w: Sequence[int]) -> bool:
    """
    Scans w left to right keeping the prefix element g; w stays reduced while
    every g r_s (s the next letter) is a positive root.
    """
    g = system.identity()
    for s in w:
        system._check_generator(s)
        if root_sign(g.column(s)) is RootSign.NEGATIVE:
            return False
        g = g.times_generator(s)
    return True

def right_descents(g: GroupElement) -> FrozenSet[int]:
    """s is a right descent iff w r_s is negative."""
    return frozenset(s for s in range(g.system.n) if root_sign(g.column(s)) is RootSign.NEGATIVE)

def left_descents(g: GroupElement) -> FrozenSet[int]:
    """s is a left descent iff w^-1 r_s is negative, i.e. r_s lies in R(w)."""
    return frozenset(s for s in range(g.system.n) if root_sign(g.inverse_column(s)) is RootSign.NEGATIVE)

def canonical_reduced_word(g: GroupElement) -> Word:
    """
    Strips the smallest right descent until the identity is reached; the
    stripped letters, read back in order, form a reduced word of g.
    """
    if g._word is not None:
        return g._word
    letters: List[int] = []
    current = g
    while True:
        descents = right_descents(current)
        if not descents:
            break
        s = min(descents)
        letters.append(s)
        current = current.times_generator(s)
    g._word = tuple(reversed(letters))
    return g._word

def length(g: GroupElement) -> int:
    return len(canonical_reduced_word(g))

def reduce_word(system: CoxeterSystem, w: Sequence[int]) -> Word:
    """A reduced word for the element of an arbitrary word."""
    return canonical_reduced_word(element_from_word(system, w))

def inversion_set(system: CoxeterSystem, w: Sequence[int]) -> List[RootVec]:
    """
    The roots w_1 ... w_{i-1} r_{w_i} for i = 1..k. As a set this is R(w),
    the inversions of w^-1, independent of the reduced word chosen.
    """
    roots = []
    g = system.identity()
    for s in w:
        system._check_generator(s)
        root = g.column(s)
        if root_sign(root) is RootSign.NEGATIVE:
            raise NotReducedError(f"Word {system.format_word(w, ',')} is not reduced")
        roots.append(root)
        g = g.times_generator(s)
    return roots

def inversion_roots(g: GroupElement) -> FrozenSet[RootVec]:
    """R(g) as a set."""
    return frozenset(inversion_set(g.system, canonical_reduced_word(g)))

def count_reduced_words(g: GroupElement, budgets: Optional[Budgets] = None) -> int:
    """#red(g) = sum over right descents s of #red(g s), #red(e) = 1."""
    limit = resolve_budgets(budgets).max_memo_entries
    memo = g.system.memo("reduced_words").charge(limit)

    def count(h: GroupElement) -> int:
        cached = memo.get(h)
        if cached is not None:
            return cached
        descents = right_descents(h)
        total = sum(count(h.times_generator(s)) for s in sorted(descents)) if descents else 1
        return memo.put(h, total)

    return count(g)

def enumerate_reduced_words(g: GroupElement, budgets: Optional[Budgets] = None) -> Iterator[Word]:
    """Yields every reduced word of g once, by DFS over right descents."""
    limit = resolve_budgets(budgets).max_class_size
    produced = 0

    def words(h: GroupElement) -> Iterator[Word]:
        descents = sorted(right_descents(h))
        if not descents:
            yield ()
            return
        for s in descents:
            for prefix in words(h.times_generator(s)):
                yield prefix + (s,)

    for word in words(g):
        produced += 1
        if produced > limit:
            raise ResourceLimitError(f"Reduced-word enumeration exceeded {limit} words", limit)
        yield word

def longest_element(system: CoxeterSystem, budgets: Optional[Budgets] = None) -> GroupElement:
    """Multiplies by the smallest non-descent until every generator is a descent."""
    limit = resolve_budgets(budgets).max_memo_entries
    g = system.identity()
    for _ in range(limit):
        ascents = [s for s in range(system.n) if root_sign(g.column(s)) is RootSign.POSITIVE]
        if not ascents:
            return g
        g = g.times_generator(ascents[0])
    raise ResourceLimitError(f"No longest element within {limit} steps; the group may be infinite", limit)

def enumerate_elements(system: CoxeterSystem, max_length: int,
                       budgets: Optional[Budgets] = None) -> List[GroupElement]:
    """All elements of length <= max_length, ordered by length (BFS over the weak order)."""
    limit = resolve_budgets(budgets).max_memo_entries
    level = [system.identity()]
    elements = list(level)
    for _ in range(max_length):
        seen: Set[GroupElement] = set()
        successors = []
        for g in level:
            for s in range(system.n):
                if root_sign(g.column(s)) is RootSign.POSITIVE:
                    h = g.times_generator(s)
                    if h not in seen:
                        seen.add(h)
                        successors.append(h)
        elements.extend(successors)
        if len(elements) > limit:
            raise ResourceLimitError(f"Element enumeration exceeded {limit} elements", limit)
        if not successors:
            break
        level = successors
    return elements
