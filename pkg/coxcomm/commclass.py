"""
Module containing the depth-function description of commutation classes of
reduced words.

For a reduced word w with word poset P, the map phi_P sends the element at
position i to the root w_1 ... w_{i-1} r_{w_i}; it is a bijection from P onto
R(w), the inversion set of w^-1. Composing the depth function of P with its
inverse gives lambda_P: R(w) -> {1, 2, ...}, which depends only on the
commutation class of w.

The set C(w) is defined without reference to words: C(e) holds the empty
function, and C(w) collects the extensions of every function of C(ws) by s
for each right descent s of w. C(w) equals the set of all lambda_P, so its
size is the number of commutation classes of reduced words of w, and

    |C(w)| = sum over nonempty independent T in D_R(w) of (-1)^(|T|+1) |C(wT)|.

This module provides:

- `LambdaFunction` and `CSet`, with JSON readers and writers.
- `phi_bijection`, `lambda_of_poset` and `extend_lambda`.
- `c_set`, `c_count_recurrence` and the `RecurrenceNode` expansion tree.
- `enumerate_commutation_classes`, `independent_subsets`, `is_321_avoiding`.
- `verify_element`, which cross-checks all of the above for one element.
"""
import logging

from dataclasses import dataclass, field
from itertools import combinations
from typing import (Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple,
                    Optional, Sequence, Tuple)

from .coxcomm_config import Budgets, resolve_budgets
from .coxcomm_types import (DescentError, ExtensionRule, InvalidInputError, InvariantViolationError,
                            NotReducedError, ResourceLimitError, RootSign, UndefinedExtensionError)
from .coxeter import (CoxeterSystem, GroupElement, RootVec, canonical_reduced_word,
                      count_reduced_words, element_from_word, enumerate_reduced_words, right_descents,
                      root_sign)
from .trace_core import (Word, WordPoset, build_poset, canonical_word, count_linear_extensions,
                         depth_function, depth_layers)

logger = logging.getLogger(__name__)

def _root_key(r: RootVec) -> Tuple[Tuple, ...]:
    return tuple(a.coeffs for a in r.coords)

class LambdaFunction(Mapping[RootVec, int]):
    """An immutable map from roots to positive integers, compared exactly."""
    __slots__ = ("_values", "_hash")

    def __init__(self, values: Optional[Mapping[RootVec, int]] = None):
        values = dict(values or {})
        for root, value in values.items():
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidInputError(f"Lambda value for {root} must be a positive integer, got {value!r}")
        self._values = values
        self._hash = hash(frozenset(values.items()))

    def __getitem__(self, root: RootVec) -> int:
        return self._values[root]

    def __iter__(self) -> Iterator[RootVec]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaFunction):
            return NotImplemented
        return self._hash == other._hash and self._values == other._values

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{root}: {value}" for root, value in self.sorted_items())
        return f"LambdaFunction({{{inner}}})"

    def extended(self, root: RootVec, value: int) -> "LambdaFunction":
        if root in self._values:
            raise InvariantViolationError(f"Root {root} is already in the lambda domain")
        values = dict(self._values)
        values[root] = value
        return LambdaFunction(values)

    def sorted_items(self) -> List[Tuple[RootVec, int]]:
        """Items ordered by value, then by root coordinates."""
        return sorted(self._values.items(), key=lambda item: (item[1], _root_key(item[0])))

    def level(self, k: int) -> FrozenSet[RootVec]:
        return frozenset(root for root, value in self._values.items() if value == k)

@dataclass(frozen=True)
class CSet:
    """C(w) for one group element."""
    element: GroupElement
    lambdas: FrozenSet[LambdaFunction]

    def __len__(self) -> int:
        return len(self.lambdas)

    def sorted_lambdas(self) -> List[LambdaFunction]:
        return sorted(self.lambdas, key=lambda lam: [(v, _root_key(r)) for r, v in lam.sorted_items()])

class CommutationClass(NamedTuple):
    word: Word
    poset: WordPoset

@dataclass(frozen=True)
class RecurrenceTerm:
    subset: Tuple[int, ...]
    sign: int
    node: "RecurrenceNode"

@dataclass(frozen=True)
class RecurrenceNode:
    """One evaluation of the recurrence: |C(element)| and the terms it summed."""
    element: GroupElement
    word: Word
    value: int
    terms: Tuple[RecurrenceTerm, ...] = field(default=())

def _check_system(system: CoxeterSystem, p: WordPoset) -> None:
    if p.alphabet != system.alphabet:
        raise InvalidInputError("Poset alphabet is not the commutation alphabet of the Coxeter system")

def _first_linear_extension(p: WordPoset) -> List[int]:
    placed = 0
    order = []
    for _ in range(p.size):
        u = min(p.available(placed))
        order.append(u)
        placed |= 1 << u
    return order

def phi_bijection(system: CoxeterSystem, p: WordPoset) -> Dict[int, RootVec]:
    """
    Maps each poset element u to w_1 ... w_{i-1} r_{w_i}, read along a linear
    extension in which u sits at position i. Any linear extension gives the
    same map; for posets built from a word the positions themselves are used.
    """
    _check_system(system, p)
    order = _first_linear_extension(p)
    phi: Dict[int, RootVec] = {}
    g = system.identity()
    for u in order:
        s = p.labels[u]
        phi[u] = g.column(s)
        if root_sign(phi[u]) is RootSign.NEGATIVE:
            raise NotReducedError(f"Poset word {system.format_word([p.labels[x] for x in order], ',')} "
                                  f"is not reduced")
        g = g.times_generator(s)

    if len(set(phi.values())) != len(phi):
        raise InvariantViolationError("phi is not injective on the poset")
    return phi

def lambda_of_poset(system: CoxeterSystem, p: WordPoset) -> LambdaFunction:
    """lambda_P(phi_P(u)) = dp(u)."""
    phi = phi_bijection(system, p)
    depth = depth_function(p)
    return LambdaFunction({root: depth[u] for u, root in phi.items()})

def extend_lambda(system: CoxeterSystem, lam: LambdaFunction, w: GroupElement, s: int,
                  rule: ExtensionRule = ExtensionRule.DEPTH) -> LambdaFunction:
    """
    Extends lam from R(w) to R(ws) = R(w) + {w r_s}. The new root r gets one
    more than the largest lam(r') over r' in R(w) with (r, r') > 0; with no
    such r' it must be simple and gets 1. Under `ExtensionRule.SIMPLE_FIRST`
    a simple r gets 1 before any r' is considered.
    """
    system._check_generator(s)
    if s in right_descents(w):
        raise DescentError(f"Generator {system.names[s]} is a right descent of {w!r}")

    root = w.column(s)
    if rule is ExtensionRule.SIMPLE_FIRST and root.is_simple():
        return lam.extended(root, 1)

    paired = [value for other, value in lam.items() if system.form(root, other).sign() > 0]
    if paired:
        return lam.extended(root, max(paired) + 1)
    if root.is_simple():
        return lam.extended(root, 1)

    logger.warning(f"Extension of {w!r} by {system.names[s]} reaches non-simple root {root} "
                   f"with no positively paired inversion")
    raise UndefinedExtensionError(f"No rule assigns a value to root {root} extending {w!r} by {system.names[s]}")

def c_set(g: GroupElement, budgets: Optional[Budgets] = None,
          rule: ExtensionRule = ExtensionRule.DEPTH) -> CSet:
    """C(g), memoized per system and rule over all elements below g."""
    budgets = resolve_budgets(budgets)
    table = g.system.memo(f"cset:{rule.value}")
    memo = table.charge(budgets.max_memo_entries)

    def compute(h: GroupElement) -> FrozenSet[LambdaFunction]:
        cached = memo.get(h)
        if cached is not None:
            return cached
        descents = sorted(right_descents(h))
        if not descents:
            result = frozenset([LambdaFunction()])
        else:
            lambdas = set()
            for s in descents:
                lower = h.times_generator(s)
                for lam in compute(lower):
                    lambdas.add(extend_lambda(h.system, lam, lower, s, rule))
                if len(lambdas) > budgets.max_class_size:
                    raise ResourceLimitError(f"C(w) exceeded {budgets.max_class_size} functions",
                                             budgets.max_class_size)
            result = frozenset(lambdas)
        return memo.put(h, result)

    lambdas = compute(g)
    logger.debug(f"C({g!r}) has {len(lambdas)} functions; memo holds {len(table)} elements")
    return CSet(g, lambdas)

def independent_subsets(system: CoxeterSystem, gens: Iterable[int]) -> List[FrozenSet[int]]:
    """Nonempty pairwise commuting subsets, by size and then lexicographically."""
    gens = sorted(set(gens))
    subsets = []
    for size in range(1, len(gens) + 1):
        for subset in combinations(gens, size):
            if system.alphabet.independent(subset):
                subsets.append(frozenset(subset))
    return subsets

def _times_subset(g: GroupElement, subset: Iterable[int]) -> GroupElement:
    for s in sorted(subset):
        g = g.times_generator(s)
    return g

def c_count_recurrence(g: GroupElement, budgets: Optional[Budgets] = None) -> int:
    """|C(g)| by inclusion-exclusion over independent subsets of D_R(g); |C(e)| = 1."""
    budgets = resolve_budgets(budgets)
    memo = g.system.memo("recurrence").charge(budgets.max_memo_entries)

    def count(h: GroupElement) -> int:
        cached = memo.get(h)
        if cached is not None:
            return cached
        subsets = independent_subsets(h.system, right_descents(h))
        total = 1 if not subsets else sum((-1) ** (len(t) + 1) * count(_times_subset(h, t)) for t in subsets)
        return memo.put(h, total)

    return count(g)

def recurrence_tree(g: GroupElement, depth: int = 1, budgets: Optional[Budgets] = None) -> RecurrenceNode:
    """The recurrence for g expanded `depth` levels deep; deeper values come from the memo."""
    budgets = resolve_budgets(budgets)

    def expand(h: GroupElement, remaining: int) -> RecurrenceNode:
        terms = []
        if remaining > 0:
            for t in independent_subsets(h.system, right_descents(h)):
                child = expand(_times_subset(h, t), remaining - 1)
                terms.append(RecurrenceTerm(tuple(sorted(t)), (-1) ** (len(t) + 1), child))
        return RecurrenceNode(h, canonical_reduced_word(h), c_count_recurrence(h, budgets), tuple(terms))

    return expand(g, depth)

def enumerate_commutation_classes(g: GroupElement, budgets: Optional[Budgets] = None) -> List[CommutationClass]:
    """Partitions the reduced words of g by canonical word; one poset per class."""
    alphabet = g.system.alphabet
    representatives = set()
    for word in enumerate_reduced_words(g, budgets):
        representatives.add(canonical_word(word, alphabet))
    return [CommutationClass(word, build_poset(word, alphabet)) for word in sorted(representatives)]

def is_321_avoiding(perm: Sequence[int]) -> bool:
    """False iff some i < j < k has perm(i) > perm(j) > perm(k)."""
    images = list(getattr(perm, "images", perm))
    n = len(images)
    if n < 3:
        return True
    suffix_min = images[:]
    for j in range(n - 2, -1, -1):
        suffix_min[j] = min(images[j], suffix_min[j + 1])
    prefix_max = images[0]
    for j in range(1, n - 1):
        if prefix_max > images[j] > suffix_min[j + 1]:
            return False
        prefix_max = max(prefix_max, images[j])
    return True

def depth_antichains(system: CoxeterSystem, lam: LambdaFunction, p: WordPoset) -> List[FrozenSet[int]]:
    """
    Pulls every level of lam back through phi_P. Each level must be an
    antichain of P with pairwise commuting labels.
    """
    if lambda_of_poset(system, p) != lam:
        raise InvalidInputError("The poset does not realize this lambda function")
    return depth_layers(p)

def lambda_to_json(lam: LambdaFunction) -> List[Dict[str, Any]]:
    return [{"root": root.to_json(), "value": value} for root, value in lam.sorted_items()]

def cset_to_json(cset: CSet) -> Dict[str, Any]:
    system = cset.element.system
    return {
        "element": [system.names[s] for s in canonical_reduced_word(cset.element)],
        "count": str(len(cset)),
        "lambdas": [lambda_to_json(lam) for lam in cset.sorted_lambdas()],
    }

def lambda_from_json(system: CoxeterSystem, data: List[Dict[str, Any]]) -> LambdaFunction:
    """Reads the output of `lambda_to_json` back over the field of system."""
    if not isinstance(data, list):
        raise InvalidInputError(f"Lambda JSON must be a list of root/value items, got {data!r}")
    values = {}
    for item in data:
        if not isinstance(item, dict) or "root" not in item or "value" not in item:
            raise InvalidInputError(f"Lambda item must have 'root' and 'value', got {item!r}")
        root = RootVec.from_json(system.ctx, item["root"], system.n)
        if root in values:
            raise InvalidInputError(f"Root {root} appears twice in lambda JSON")
        values[root] = item["value"]
    return LambdaFunction(values)

def cset_from_json(system: CoxeterSystem, data: Dict[str, Any]) -> CSet:
    """Reads the output of `cset_to_json`; the element comes from its generator names."""
    if not isinstance(data, dict) or not isinstance(data.get("element"), list) or "lambdas" not in data:
        raise InvalidInputError("C(w) JSON must be an object with an 'element' list and 'lambdas'")
    word = []
    for name in data["element"]:
        if name not in system.names:
            raise InvalidInputError(f"Unknown generator {name!r}. Choose from: {list(system.names)}")
        word.append(system.names.index(name))
    lambdas = frozenset(lambda_from_json(system, item) for item in data["lambdas"])
    count = data.get("count")
    if count is not None and str(count) != str(len(lambdas)):
        raise InvalidInputError(f"C(w) JSON lists {len(lambdas)} functions but a count of {count}")
    return CSet(element_from_word(system, word), lambdas)

@dataclass(frozen=True)
class VerificationReport:
    """Counts computed independently for one element, and whether they agree."""
    word: Word
    reduced_words: int
    linear_extension_total: int
    classes: int
    c_set_size: int
    recurrence: int
    lambdas_match: bool

    @property
    def ok(self) -> bool:
        return (self.lambdas_match and self.reduced_words == self.linear_extension_total
                and self.classes == self.c_set_size == self.recurrence)

    def to_json(self) -> Dict[str, Any]:
        return {
            "word": list(self.word),
            "reduced_words": str(self.reduced_words),
            "linear_extension_total": str(self.linear_extension_total),
            "classes": str(self.classes),
            "c_set": str(self.c_set_size),
            "recurrence": str(self.recurrence),
            "lambdas_match": self.lambdas_match,
            "ok": self.ok,
        }

def verify_element(g: GroupElement, budgets: Optional[Budgets] = None) -> VerificationReport:
    """
    Checks that the lambda functions of the class posets are exactly C(g), that
    the class count, |C(g)| and the recurrence agree, and that the linear
    extensions of the class posets account for every reduced word.
    """
    system = g.system
    classes = enumerate_commutation_classes(g, budgets)
    cset = c_set(g, budgets)
    from_posets = {lambda_of_poset(system, cls.poset) for cls in classes}
    report = VerificationReport(
        word=canonical_reduced_word(g),
        reduced_words=count_reduced_words(g, budgets),
        linear_extension_total=sum(count_linear_extensions(cls.poset, budgets) for cls in classes),
        classes=len(classes),
        c_set_size=len(cset),
        recurrence=c_count_recurrence(g, budgets),
        lambdas_match=from_posets == set(cset.lambdas),
    )
    if not report.ok:
        logger.warning(f"Verification mismatch for {g!r}: {report.to_json()}")
    return report
