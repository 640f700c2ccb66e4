"""
Tests for alphabets, word posets, linear extensions and commutation classes.

The running example is the alphabet {a, b, c, d} in which ab, cd and ad
commute, so ac, bc and bd do not.

The tests cover the following scenarios:

    - Alphabet construction, validation, parsing and JSON round trips.
    - Word posets of "abcd", "badbcd" and the empty word: covers, order,
      minimal and maximal elements, DOT, JSON and networkx exports.
    - Both word poset axioms on built posets and their failure on posets
      built from arbitrary relations.
    - The five-word class of "abcd", by linear extensions and by BFS.
    - Exhaustive agreement of linear extensions, BFS closure and the down-set
      counter for all words of length up to 7 over 4-letter alphabets with
      seed-pinned random commutation relations.
    - Canonical words, class equality and poset isomorphism.
    - Depth functions and depth layers, checked against networkx longest paths.
    - Budget enforcement in every enumerating operation.
"""
import itertools
import random
import unittest

import networkx as nx

from coxcomm import (Alphabet, WordPoset, InvalidInputError, InvariantViolationError, ResourceLimitError,
                     Budgets, build_poset, verify_word_poset, linear_extensions, count_linear_extensions,
                     commutation_class_bfs, canonical_word, same_class, posets_isomorphic, depth_function,
                     depth_layers)
from coxcomm.trace_core import canonical_word_of_poset

def _example_alphabet() -> Alphabet:
    return Alphabet.from_pairs("abcd", [("a", "b"), ("c", "d"), ("a", "d")])

class TestAlphabet(unittest.TestCase):
    def setUp(self):
        self.alphabet = _example_alphabet()

    def test_commutation_is_symmetric(self):
        a, b, c, d = range(4)
        self.assertTrue(self.alphabet.commute(a, b))
        self.assertTrue(self.alphabet.commute(b, a))
        self.assertFalse(self.alphabet.commute(a, c))
        self.assertFalse(self.alphabet.commute(a, a))
        self.assertTrue(self.alphabet.dependent(b, d))
        self.assertTrue(self.alphabet.independent([a, b]))
        self.assertFalse(self.alphabet.independent([a, b, c]))

    def test_parse_word_forms(self):
        cases = {"badbcd": (1, 0, 3, 1, 2, 3), "b a d": (1, 0, 3), "b,a,d": (1, 0, 3), "": ()}
        for text, expected in cases.items():
            with self.subTest(text=text):
                self.assertEqual(self.alphabet.parse_word(text), expected)

    def test_multi_character_symbols(self):
        alphabet = Alphabet.from_pairs(["x1", "x2", "x10"], [("x1", "x10")])
        self.assertEqual(alphabet.parse_word("x10 x1,x2"), (2, 0, 1))
        self.assertEqual(alphabet.format_word((2, 0), ","), "x10,x1")
        with self.assertRaises(InvalidInputError):
            alphabet.parse_word("x1x2")

    def test_unknown_symbol(self):
        with self.assertRaises(InvalidInputError):
            self.alphabet.parse_word("abe")

    def test_invalid_alphabets(self):
        with self.assertRaises(InvalidInputError):
            Alphabet(("a", "a"), ((False, False), (False, False)))
        with self.assertRaises(InvalidInputError):
            Alphabet(("a", "b"), ((False, True), (False, False)))
        with self.assertRaises(InvalidInputError):
            Alphabet.from_pairs("ab", [("a", "z")])
        for pairs in ([5], 5, [("a", "b", "a")], ["ab"]):
            with self.subTest(pairs=pairs):
                with self.assertRaises(InvalidInputError):
                    Alphabet.from_pairs("ab", pairs)

    def test_json_round_trip(self):
        data = self.alphabet.to_json()
        self.assertEqual(data["commuting_pairs"], [["a", "b"], ["a", "d"], ["c", "d"]])
        self.assertEqual(Alphabet.from_json(data), self.alphabet)

    def test_validate_word_rejects_bad_letters(self):
        for word in [(0, 4), (0, -1), (True,)]:
            with self.subTest(word=word):
                with self.assertRaises(InvalidInputError):
                    self.alphabet.validate_word(word)

class TestWordPoset(unittest.TestCase):
    def setUp(self):
        self.alphabet = _example_alphabet()

    def poset(self, text: str) -> WordPoset:
        return build_poset(self.alphabet.parse_word(text), self.alphabet)

    def test_covers_of_abcd(self):
        p = self.poset("abcd")
        self.assertEqual(p.covers, ((0, 2), (1, 2), (1, 3)))
        self.assertEqual(p.minimal_elements(), [0, 1])
        self.assertEqual(p.maximal_elements(), [2, 3])

    def test_covers_of_badbcd(self):
        p = self.poset("badbcd")
        self.assertEqual(sorted(p.covers), [(0, 2), (1, 4), (2, 3), (3, 4), (3, 5)])
        self.assertTrue(p.less_equal(0, 4))
        self.assertFalse(p.comparable(1, 5))

    def test_empty_word(self):
        p = self.poset("")
        self.assertEqual(p.size, 0)
        self.assertEqual(p.covers, ())
        self.assertEqual(list(linear_extensions(p)), [()])
        self.assertEqual(count_linear_extensions(p), 1)
        self.assertEqual(p.to_dot(), "digraph P {\n\trankdir=BT;\n}\n")

    def test_relations_point_forward(self):
        rng = random.Random(11)
        for _ in range(50):
            word = tuple(rng.randrange(4) for _ in range(rng.randint(0, 9)))
            p = build_poset(word, self.alphabet)
            for u in range(p.size):
                for v in range(p.size):
                    if p.less_equal(u, v):
                        self.assertLessEqual(u, v)

    def test_built_posets_satisfy_axioms(self):
        for word in itertools.product(range(4), repeat=5):
            self.assertTrue(verify_word_poset(build_poset(word, self.alphabet), self.alphabet), word)

    def test_covers_match_networkx_reduction(self):
        rng = random.Random(5)
        for _ in range(40):
            word = tuple(rng.randrange(4) for _ in range(rng.randint(1, 10)))
            p = build_poset(word, self.alphabet)
            full = nx.DiGraph()
            full.add_nodes_from(range(p.size))
            full.add_edges_from((u, v) for u in range(p.size) for v in range(p.size)
                                if u != v and p.less_equal(u, v))
            self.assertEqual(sorted(nx.transitive_reduction(full).edges()), sorted(p.covers))

    def test_from_relations(self):
        p = WordPoset.from_relations((0, 1, 2, 3), [(0, 2), (1, 2), (1, 3), (0, 2)], self.alphabet)
        self.assertEqual(p.covers, ((0, 2), (1, 2), (1, 3)))
        self.assertEqual(p, self.poset("abcd"))

    def test_from_relations_rejects_cycles(self):
        with self.assertRaises(InvalidInputError):
            WordPoset.from_relations((0, 2, 1), [(0, 1), (1, 2), (2, 0)], self.alphabet)

    def test_axiom_failures(self):
        # a and c do not commute, so they must be comparable
        unrelated = WordPoset.from_relations((0, 2), [], self.alphabet)
        self.assertFalse(verify_word_poset(unrelated, self.alphabet))
        # a cover between commuting a and b
        forced = WordPoset.from_relations((0, 1), [(0, 1)], self.alphabet)
        self.assertFalse(verify_word_poset(forced, self.alphabet))

    def test_exports(self):
        p = self.poset("abcd")
        dot = p.to_dot()
        for line in ['1 [label="1:a"];', "1 -> 3;", "2 -> 3;", "2 -> 4;", "rankdir=BT;"]:
            self.assertIn(line, dot)
        self.assertEqual(p.to_json(), {"size": 4, "labels": ["a", "b", "c", "d"],
                                       "covers": [[1, 3], [2, 3], [2, 4]]})
        graph = p.to_networkx()
        self.assertEqual(sorted(graph.edges()), [(1, 3), (2, 3), (2, 4)])
        self.assertEqual(graph.nodes[4]["symbol"], "d")

class TestCommutationClasses(unittest.TestCase):
    def setUp(self):
        self.alphabet = _example_alphabet()

    def test_class_of_abcd(self):
        word = self.alphabet.parse_word("abcd")
        expected = {self.alphabet.parse_word(w) for w in ["abcd", "abdc", "bacd", "badc", "bdac"]}
        p = build_poset(word, self.alphabet)
        self.assertEqual(set(linear_extensions(p)), expected)
        self.assertEqual(commutation_class_bfs(word, self.alphabet), expected)
        self.assertEqual(count_linear_extensions(p), 5)

    def test_linear_extensions_are_distinct_and_deterministic(self):
        p = build_poset(self.alphabet.parse_word("badbcd"), self.alphabet)
        words = list(linear_extensions(p))
        self.assertEqual(len(words), 9)
        self.assertEqual(len(set(words)), 9)
        self.assertEqual(words, list(linear_extensions(p)))
        self.assertEqual(count_linear_extensions(p), 9)

    def test_single_letter(self):
        p = build_poset((2,), self.alphabet)
        self.assertEqual(list(linear_extensions(p)), [(2,)])

    def test_exhaustive_agreement_on_random_alphabets(self):
        rng = random.Random(2024)
        pairs = list(itertools.combinations(range(4), 2))
        for _ in range(3):
            chosen = [pair for pair in pairs if rng.random() < 0.5]
            alphabet = Alphabet.from_pairs("wxyz", [("wxyz"[a], "wxyz"[b]) for a, b in chosen])
            for k in range(8):
                covered = set()
                for word in itertools.product(range(4), repeat=k):
                    if word in covered:
                        continue
                    cls = commutation_class_bfs(word, alphabet)
                    p = build_poset(word, alphabet)
                    extensions = list(linear_extensions(p))
                    self.assertEqual(len(extensions), len(set(extensions)))
                    self.assertEqual(set(extensions), cls)
                    self.assertEqual(count_linear_extensions(p), len(cls))
                    # every word of the class has an isomorphic poset
                    other = min(cls)
                    self.assertTrue(posets_isomorphic(p, build_poset(other, alphabet)))
                    covered |= cls

    def test_canonical_word(self):
        word = self.alphabet.parse_word("bdac")
        self.assertEqual(canonical_word(word, self.alphabet), self.alphabet.parse_word("abcd"))
        p = build_poset(word, self.alphabet)
        self.assertEqual(canonical_word_of_poset(p), self.alphabet.parse_word("abcd"))

    def test_same_class(self):
        parse = self.alphabet.parse_word
        self.assertTrue(same_class(parse("abcd"), parse("bdac"), self.alphabet))
        self.assertFalse(same_class(parse("abcd"), parse("acbd"), self.alphabet))
        self.assertFalse(same_class(parse("abc"), parse("abcd"), self.alphabet))

    def test_isomorphism(self):
        parse = self.alphabet.parse_word
        self.assertTrue(posets_isomorphic(build_poset(parse("abcd"), self.alphabet),
                                          build_poset(parse("badc"), self.alphabet)))
        self.assertFalse(posets_isomorphic(build_poset(parse("abcd"), self.alphabet),
                                           build_poset(parse("acbd"), self.alphabet)))

    def test_budgets(self):
        p = build_poset(self.alphabet.parse_word("abcd"), self.alphabet)
        with self.assertRaises(ResourceLimitError):
            list(linear_extensions(p, Budgets(max_class_size=4)))
        with self.assertRaises(ResourceLimitError):
            commutation_class_bfs(self.alphabet.parse_word("abcd"), self.alphabet, Budgets(max_class_size=4))
        with self.assertRaises(ResourceLimitError):
            count_linear_extensions(p, Budgets(max_down_sets=3))
        self.assertEqual(len(list(linear_extensions(p, Budgets(max_class_size=5)))), 5)

class TestDepth(unittest.TestCase):
    def setUp(self):
        self.alphabet = _example_alphabet()

    def test_depth_of_badbcd(self):
        p = build_poset(self.alphabet.parse_word("badbcd"), self.alphabet)
        self.assertEqual(depth_function(p), (1, 1, 2, 3, 4, 4))
        self.assertEqual(depth_layers(p), [frozenset({0, 1}), frozenset({2}), frozenset({3}), frozenset({4, 5})])

    def test_depth_matches_longest_paths(self):
        rng = random.Random(17)
        for _ in range(40):
            word = tuple(rng.randrange(4) for _ in range(rng.randint(1, 10)))
            p = build_poset(word, self.alphabet)
            graph = nx.DiGraph()
            graph.add_nodes_from(range(p.size))
            graph.add_edges_from(p.covers)
            for u in range(p.size):
                chain = max((len(path) for v in nx.ancestors(graph, u)
                             for path in nx.all_simple_paths(graph, v, u)), default=1)
                self.assertEqual(depth_function(p)[u], chain)

    def test_layers_are_independent_antichains(self):
        for word in itertools.product(range(4), repeat=6):
            p = build_poset(word, self.alphabet)
            for layer in depth_layers(p):
                self.assertTrue(self.alphabet.independent([p.labels[u] for u in layer]))

    def test_layer_check_detects_bad_poset(self):
        # an antichain of two dependent labels is not a word poset
        bad = WordPoset.from_relations((0, 2), [], self.alphabet)
        with self.assertRaises(InvariantViolationError):
            depth_layers(bad)
