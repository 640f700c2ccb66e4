"""
Tests for the coxcomm command line.

The tests run `main` with an argument list and capture what it writes.
They cover the following scenarios:

    - poset: text, JSON and DOT output, the empty word, unknown symbols and
      alphabet files.
    - class: the sorted class listing, DOT rejection and class budgets.
    - coxeter: check, count-reduced, classes, cset, recurrence, inversions
      and verify on named types and matrix files.
    - Exit codes for invalid input, exhausted budgets and failed
      verification, and the COXCOMM_BUDGET_MEMO environment variable.
"""
import io
import json
import os
import tempfile
import unittest

from unittest.mock import patch

from coxcomm.cli import main
from coxcomm.commclass import VerificationReport
from coxcomm.coxcomm_config import BUDGET_MEMO_ENV

ALPHABET = ["--symbols", "abcd", "--commute", "ab,cd,ad"]

def run(*argv):
    out = io.StringIO()
    with patch("sys.stderr", new_callable=io.StringIO) as err:
        code = main(list(argv), out=out)
    return code, out.getvalue(), err.getvalue()

class TestPosetCommand(unittest.TestCase):
    def test_dot_output(self):
        code, out, _ = run("poset", *ALPHABET, "--word", "badbcd", "--format", "dot")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("digraph P {"))
        edges = [line.strip() for line in out.splitlines() if "->" in line]
        self.assertEqual(edges, ["1 -> 3;", "2 -> 5;", "3 -> 4;", "4 -> 5;", "4 -> 6;"])
        self.assertIn('1 [label="1:b"];', out)

    def test_text_output(self):
        code, out, _ = run("poset", *ALPHABET, "--word", "abcd")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["size: 4", "labels: 1:a 2:b 3:c 4:d", "covers: 1->3 2->3 2->4"])

    def test_json_output(self):
        code, out, _ = run("poset", *ALPHABET, "--word", "abcd", "--format", "json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data, {"size": 4, "labels": ["a", "b", "c", "d"], "covers": [[1, 3], [2, 3], [2, 4]]})

    def test_empty_word(self):
        code, out, _ = run("poset", *ALPHABET, "--word", "", "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["size"], 0)

    def test_unknown_symbol(self):
        code, out, err = run("poset", *ALPHABET, "--word", "abx")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("Unknown symbol 'x'", err)

    def test_multi_character_symbols(self):
        code, out, _ = run("poset", "--symbols", "x1,x2,x3", "--commute", "x1:x3", "--word", "x1 x2 x3",
                           "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["covers"], [[1, 2], [2, 3]])

    def test_alphabet_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "alphabet.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"symbols": ["a", "b"], "commuting_pairs": [["a", "b"]]}, f)
            code, out, _ = run("class", "--alphabet", path, "--word", "ab")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["ab", "ba", "count: 2"])

    def test_malformed_alphabet_files(self):
        cases = [
            {"symbols": ["a", "b"], "commuting_pairs": [5]},
            {"symbols": ["a", "b"], "commuting_pairs": 5},
            {"symbols": ["a", "b"], "commuting_pairs": [["a", "b", "a"]]},
            {"symbols": ["a", "b"], "commuting_pairs": [[["a"], "b"]]},
            {"symbols": [1, 2]},
        ]
        for data in cases:
            with self.subTest(data=data):
                with tempfile.TemporaryDirectory() as tmp:
                    path = os.path.join(tmp, "alphabet.json")
                    with open(path, "w", encoding="utf-8") as f:
                        json.dump(data, f)
                    code, out, err = run("poset", "--alphabet", path, "--word", "ab")
                self.assertEqual(code, 2)
                self.assertEqual(out, "")
                self.assertTrue(err.startswith("Exit 2:"))

    def test_missing_alphabet(self):
        code, _, err = run("poset", "--word", "ab")
        self.assertEqual(code, 2)
        self.assertIn("--symbols", err)

class TestClassCommand(unittest.TestCase):
    def test_class_listing(self):
        code, out, _ = run("class", *ALPHABET, "--word", "abcd")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["abcd", "abdc", "bacd", "badc", "bdac", "count: 5"])

    def test_class_json(self):
        code, out, _ = run("class", *ALPHABET, "--word", "abcd", "--format", "json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["count"], "5")
        self.assertEqual(len(data["words"]), 5)

    def test_dot_is_rejected(self):
        code, _, _ = run("class", *ALPHABET, "--word", "abcd", "--format", "dot")
        self.assertEqual(code, 2)

    def test_class_budget(self):
        code, _, err = run("class", *ALPHABET, "--word", "abcd", "--budget-class", "2")
        self.assertEqual(code, 3)
        self.assertTrue(err.startswith("Exit 3:"))

    def test_invalid_budget(self):
        code, _, _ = run("class", *ALPHABET, "--word", "abcd", "--budget-memo", "0")
        self.assertEqual(code, 2)

class TestCoxeterCommands(unittest.TestCase):
    def test_check(self):
        cases = [(["--word", "s1,s2,s1"], "true"), (["--word", "s1,s1"], "false"), (["--word", "1 2 1 2"], "true"),
                 (["--word", ""], "true")]
        for extra, expected in cases:
            with self.subTest(extra=extra):
                code, out, _ = run("coxeter", "check", "--type", "B2", *extra)
                self.assertEqual(code, 0)
                self.assertEqual(out.strip(), expected)

    def test_count_reduced(self):
        code, out, _ = run("coxeter", "count-reduced", "--type", "A2", "--word", "s1,s2,s1")
        self.assertEqual((code, out.strip()), (0, "2"))
        code, out, _ = run("coxeter", "count-reduced", "--type", "A3", "--perm", "4321", "--format", "json")
        self.assertEqual(json.loads(out)["count"], "16")

    def test_recurrence(self):
        code, out, _ = run("coxeter", "recurrence", "--type", "A3", "--perm", "4231")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), [
            "C[4231] = 3",
            "  + C[2431] = 2   (T = {s1})",
            "  + C[4213] = 2   (T = {s3})",
            "  - C[2413] = 1   (T = {s1,s3})",
        ])

    def test_recurrence_json(self):
        code, out, _ = run("coxeter", "recurrence", "--type", "A3", "--perm", "4231", "--depth", "2",
                           "--format", "json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["value"], "3")
        self.assertEqual([t["sign"] for t in data["terms"]], [1, 1, -1])
        self.assertEqual(data["terms"][2]["subset"], ["s1", "s3"])
        self.assertTrue(data["terms"][0]["node"]["terms"])

    def test_classes(self):
        code, out, _ = run("coxeter", "classes", "--type", "A3", "--perm", "4321")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[-1], "classes: 8")
        code, out, _ = run("coxeter", "classes", "--type", "A3", "--perm", "4231", "--format", "dot")
        self.assertEqual(code, 0)
        self.assertEqual([line for line in out.splitlines() if line.startswith("digraph")],
                         ["digraph C1 {", "digraph C2 {", "digraph C3 {"])

    def test_cset(self):
        code, out, _ = run("coxeter", "cset", "--type", "A2", "--word", "s1,s2")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["{r1: 1, r1 + r2: 2}", "|C[231]| = 1"])
        code, out, _ = run("coxeter", "cset", "--type", "B2", "--word", "s1")
        self.assertEqual(out.splitlines()[-1], "|C[s1]| = 1")

    def test_cset_json(self):
        code, out, _ = run("coxeter", "cset", "--type", "H3", "--word", "s1,s2,s1", "--format", "json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["count"], str(len(data["lambdas"])))

    def test_inversions(self):
        code, out, _ = run("coxeter", "inversions", "--type", "A2", "--word", "s1,s2,s1")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["1: r1", "2: r1 + r2", "3: r2"])
        code, _, _ = run("coxeter", "inversions", "--type", "A2", "--word", "s1,s1")
        self.assertEqual(code, 2)

    def test_matrix_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "i2inf.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"generators": ["a", "b"], "matrix": [[1, 0], [0, 1]]}, f)
            code, out, _ = run("coxeter", "count-reduced", "--matrix", path, "--word", "a,b,a,b,a")
        self.assertEqual((code, out.strip()), (0, "1"))

    def test_malformed_matrix_files(self):
        cases = [
            {"generators": 5, "matrix": [[1, 3], [3, 1]]},
            {"generators": "ab", "matrix": [[1, 3], [3, 1]]},
            {"generators": ["a", 2], "matrix": [[1, 3], [3, 1]]},
            {"matrix": 5},
        ]
        for data in cases:
            with self.subTest(data=data):
                with tempfile.TemporaryDirectory() as tmp:
                    path = os.path.join(tmp, "matrix.json")
                    with open(path, "w", encoding="utf-8") as f:
                        json.dump(data, f)
                    code, _, err = run("coxeter", "check", "--matrix", path, "--word", "1")
                self.assertEqual(code, 2)
                self.assertTrue(err.startswith("Exit 2:"))

    def test_invalid_element_arguments(self):
        cases = [
            ["coxeter", "cset", "--type", "A3"],
            ["coxeter", "cset", "--type", "A3", "--perm", "4231", "--word", "s1"],
            ["coxeter", "cset", "--type", "B3", "--perm", "213"],
            ["coxeter", "cset", "--type", "A3", "--perm", "213"],
            ["coxeter", "cset", "--type", "Q3", "--word", "s1"],
            ["coxeter", "cset", "--word", "s1"],
        ]
        for argv in cases:
            with self.subTest(argv=argv):
                code, _, _ = run(*argv)
                self.assertEqual(code, 2)

    def test_memo_budget_from_environment(self):
        with patch.dict("os.environ", {BUDGET_MEMO_ENV: "3"}):
            code, _, err = run("coxeter", "count-reduced", "--type", "A3", "--perm", "4321")
        self.assertEqual(code, 3)
        self.assertIn("exceeded 3 entries", err)

class TestVerifyCommand(unittest.TestCase):
    def test_verify_is_deterministic(self):
        argv = ["coxeter", "verify", "--type", "A3", "--seed", "5", "--samples", "6", "--max-length", "6"]
        first = run(*argv)
        second = run(*argv)
        self.assertEqual(first[0], 0)
        self.assertEqual(first[1], second[1])
        self.assertEqual(first[1].splitlines()[-1], "checked 6 elements, 0 mismatches")

    def test_verify_json(self):
        code, out, _ = run("coxeter", "verify", "--type", "B3", "--seed", "1", "--samples", "4", "--format", "json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["seed"], 1)
        self.assertEqual(data["mismatches"], "0")
        self.assertTrue(all(r["ok"] for r in data["reports"]))

    def test_mismatch_exits_with_invariant_code(self):
        bad = VerificationReport(word=(0,), reduced_words=1, linear_extension_total=1, classes=1,
                                 c_set_size=2, recurrence=1, lambdas_match=False)
        with patch("coxcomm.cli.verify_element", return_value=bad):
            code, out, err = run("coxeter", "verify", "--type", "A2", "--samples", "2")
        self.assertEqual(code, 4)
        self.assertIn("MISMATCH", out)
        self.assertTrue(err.startswith("Exit 4:"))
