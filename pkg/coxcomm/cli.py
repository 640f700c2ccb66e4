"""
Command line front end for coxcomm.

Usage examples:

    python -m coxcomm poset --symbols abcd --commute ab,cd,ad --word badbcd --format dot
    python -m coxcomm class --symbols abcd --commute ab,cd,ad --word abcd
    python -m coxcomm coxeter recurrence --type A3 --perm 4231
    python -m coxcomm coxeter count-reduced --type A2 --word s1,s2,s1
    python -m coxcomm coxeter verify --type H3 --seed 7 --samples 20 --max-length 8

Exit codes: 0 success, 2 invalid input, 3 resource budget exhausted,
4 internal invariant violation. Results go to stdout; diagnostics and logging
(enabled with -v / -vv) go to stderr.
"""
import argparse
import json
import logging
import random
import sys

from typing import Any, List, Optional, Sequence, TextIO

from ._core_types import ExitCode
from .commclass import (RecurrenceNode, c_set, cset_to_json, enumerate_commutation_classes, recurrence_tree,
                        verify_element)
from .coxcomm_config import Budgets, RunConfig
from .coxcomm_types import CoxCommException, InvalidInputError, InvariantViolationError, OutputFormat
from .coxeter import (CoxeterSystem, GroupElement, canonical_reduced_word, count_reduced_words,
                      element_from_word, inversion_set, is_reduced)
from .trace_core import Alphabet, build_poset, count_linear_extensions, linear_extensions
from .typea import element_to_perm, parse_permutation

logger = logging.getLogger(__name__)

def _emit(out: TextIO, config: RunConfig, text: str, data: Any) -> None:
    if config.output_format is OutputFormat.JSON:
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")

def _require_not_dot(config: RunConfig) -> None:
    if config.output_format is OutputFormat.DOT:
        raise InvalidInputError(f"DOT output is not available for '{config.command}'")

def _load_alphabet(args) -> Alphabet:
    if args.alphabet:
        return Alphabet.load(args.alphabet)
    if not args.symbols:
        raise InvalidInputError("Give --alphabet FILE or --symbols with optional --commute")
    symbols = [s for s in args.symbols.replace(",", " ").split()]
    if len(symbols) == 1 and len(symbols[0]) > 1:
        symbols = list(symbols[0])
    pairs = []
    for token in (args.commute or "").replace(",", " ").split():
        pairs.append(token.split(":") if ":" in token else list(token))
    return Alphabet.from_pairs(symbols, pairs)

def _load_system(args) -> CoxeterSystem:
    if args.type and args.matrix:
        raise InvalidInputError("Give only one of --type and --matrix")
    if args.type:
        return CoxeterSystem.named(args.type)
    if args.matrix:
        return CoxeterSystem.load(args.matrix)
    raise InvalidInputError("Give --type (e.g. A3) or --matrix FILE")

def _load_element(system: CoxeterSystem, args) -> GroupElement:
    if args.word is not None and args.perm is not None:
        raise InvalidInputError("Give only one of --word and --perm")
    if args.perm is not None:
        return parse_permutation(system, args.perm)
    if args.word is not None:
        return element_from_word(system, system.parse_word(args.word))
    raise InvalidInputError("Give --word or --perm")

def _element_label(g: GroupElement) -> str:
    if g.system.is_type_a():
        return f"[{element_to_perm(g)}]"
    word = canonical_reduced_word(g)
    return f"[{g.system.format_word(word, ' ') or 'e'}]"

def _word_names(system: CoxeterSystem, word: Sequence[int]) -> List[str]:
    return [system.names[s] for s in word]

def cmd_poset(args, config: RunConfig, out: TextIO) -> int:
    alphabet = _load_alphabet(args)
    p = build_poset(alphabet.parse_word(args.word), alphabet)
    if config.output_format is OutputFormat.DOT:
        out.write(p.to_dot())
        return ExitCode.OK
    lines = [f"size: {p.size}", "labels: " + " ".join(f"{u + 1}:{alphabet.symbols[a]}" for u, a in enumerate(p.labels)),
             "covers: " + " ".join(f"{u + 1}->{v + 1}" for u, v in p.covers)]
    _emit(out, config, "\n".join(lines), p.to_json())
    return ExitCode.OK

def cmd_class(args, config: RunConfig, out: TextIO) -> int:
    _require_not_dot(config)
    alphabet = _load_alphabet(args)
    word = alphabet.parse_word(args.word)
    p = build_poset(word, alphabet)
    words = sorted(linear_extensions(p, config.budgets))
    rendered = [alphabet.format_word(w, "") if all(len(s) == 1 for s in alphabet.symbols)
                else alphabet.format_word(w, " ") for w in words]
    text = "\n".join(rendered + [f"count: {len(words)}"])
    _emit(out, config, text, {"word": alphabet.format_word(word, " "), "count": str(len(words)),
                              "words": rendered})
    return ExitCode.OK

def _coxeter_check(system, g, args, config, out) -> int:
    if args.perm is not None:
        word = canonical_reduced_word(g)
    else:
        word = system.parse_word(args.word)
    reduced = is_reduced(system, word)
    _emit(out, config, "true" if reduced else "false",
          {"word": _word_names(system, word), "reduced": reduced})
    return ExitCode.OK

def _coxeter_count_reduced(system, g, args, config, out) -> int:
    count = count_reduced_words(g, config.budgets)
    _emit(out, config, str(count), {"element": _word_names(system, canonical_reduced_word(g)), "count": str(count)})
    return ExitCode.OK

def _coxeter_classes(system, g, args, config, out) -> int:
    classes = enumerate_commutation_classes(g, config.budgets)
    if config.output_format is OutputFormat.DOT:
        for k, cls in enumerate(classes, start=1):
            out.write(cls.poset.to_dot(name=f"C{k}"))
        return ExitCode.OK
    sizes = [count_linear_extensions(cls.poset, config.budgets) for cls in classes]
    lines = [f"{system.format_word(cls.word, ' ') or 'e'}  ({size} words)" for cls, size in zip(classes, sizes)]
    lines.append(f"classes: {len(classes)}")
    _emit(out, config, "\n".join(lines), {
        "element": _word_names(system, canonical_reduced_word(g)),
        "count": str(len(classes)),
        "classes": [{"word": _word_names(system, cls.word), "words": str(size), "poset": cls.poset.to_json()}
                    for cls, size in zip(classes, sizes)],
    })
    return ExitCode.OK

def _coxeter_cset(system, g, args, config, out) -> int:
    _require_not_dot(config)
    cset = c_set(g, config.budgets)
    lines = []
    for lam in cset.sorted_lambdas():
        lines.append("{" + ", ".join(f"{root}: {value}" for root, value in lam.sorted_items()) + "}")
    lines.append(f"|C{_element_label(g)}| = {len(cset)}")
    _emit(out, config, "\n".join(lines), cset_to_json(cset))
    return ExitCode.OK

def _tree_lines(node: RecurrenceNode, indent: str = "") -> List[str]:
    lines = []
    for term in node.terms:
        names = ",".join(node.element.system.names[s] for s in term.subset)
        sign = "+" if term.sign > 0 else "-"
        lines.append(f"{indent}  {sign} C{_element_label(term.node.element)} = {term.node.value}   (T = {{{names}}})")
        lines.extend(_tree_lines(term.node, indent + "    "))
    return lines

def _tree_json(node: RecurrenceNode) -> dict:
    system = node.element.system
    return {
        "element": _word_names(system, node.word),
        "value": str(node.value),
        "terms": [{"subset": _word_names(system, term.subset), "sign": term.sign, "node": _tree_json(term.node)}
                  for term in node.terms],
    }

def _coxeter_recurrence(system, g, args, config, out) -> int:
    _require_not_dot(config)
    tree = recurrence_tree(g, args.depth, config.budgets)
    lines = [f"C{_element_label(g)} = {tree.value}"] + _tree_lines(tree)
    _emit(out, config, "\n".join(lines), _tree_json(tree))
    return ExitCode.OK

def _coxeter_inversions(system, g, args, config, out) -> int:
    _require_not_dot(config)
    word = system.parse_word(args.word) if args.word is not None else canonical_reduced_word(g)
    roots = inversion_set(system, word)
    lines = [f"{i}: {root}" for i, root in enumerate(roots, start=1)]
    _emit(out, config, "\n".join(lines) if lines else "(empty)",
          {"word": _word_names(system, word), "roots": [root.to_json() for root in roots]})
    return ExitCode.OK

def _coxeter_verify(system, args, config, out) -> int:
    _require_not_dot(config)
    rng = random.Random(config.seed)
    reports = []
    for _ in range(args.samples):
        length = rng.randint(0, args.max_length)
        word = [rng.randrange(system.n) for _ in range(length)]
        g = element_from_word(system, word)
        reports.append(verify_element(g, config.budgets))

    failures = [r for r in reports if not r.ok]
    lines = [f"{system.format_word(r.word, ',') or 'e'}: classes={r.classes} c_set={r.c_set_size} "
             f"recurrence={r.recurrence} reduced={r.reduced_words} {'ok' if r.ok else 'MISMATCH'}"
             for r in reports]
    lines.append(f"checked {len(reports)} elements, {len(failures)} mismatches")
    _emit(out, config, "\n".join(lines), {"seed": config.seed, "reports": [r.to_json() for r in reports],
                                          "mismatches": str(len(failures))})
    if failures:
        raise InvariantViolationError(f"{len(failures)} of {len(reports)} sampled elements failed verification")
    return ExitCode.OK

_COXETER_COMMANDS = {
    "check": _coxeter_check,
    "count-reduced": _coxeter_count_reduced,
    "classes": _coxeter_classes,
    "cset": _coxeter_cset,
    "recurrence": _coxeter_recurrence,
    "inversions": _coxeter_inversions,
}

def cmd_coxeter(args, config: RunConfig, out: TextIO) -> int:
    system = _load_system(args)
    if args.subcommand == "verify":
        return _coxeter_verify(system, args, config, out)
    g = _load_element(system, args)
    return _COXETER_COMMANDS[args.subcommand](system, g, args, config, out)

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value,
                        help="Output format")
    parser.add_argument("--budget-class", type=int, default=None, help="Most words any enumeration may produce")
    parser.add_argument("--budget-memo", type=int, default=None,
                        help="Most memo entries one computation may add (default from COXCOMM_BUDGET_MEMO)")
    parser.add_argument("--budget-down-sets", type=int, default=None,
                        help="Most down-sets the linear-extension counter may visit")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG on stderr")

def _add_alphabet(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alphabet", help="Alphabet JSON file")
    parser.add_argument("--symbols", help="Inline symbols, e.g. abcd or x1,x2,x3")
    parser.add_argument("--commute", help="Inline commuting pairs, e.g. ab,cd,ad or x1:x2")
    parser.add_argument("--word", required=True, help="The word, e.g. badbcd or 'x1 x2'")

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxcomm",
                                     description="Word posets, commutation classes and reduced words in Coxeter groups")
    subparsers = parser.add_subparsers(dest="command", required=True)

    poset_p = subparsers.add_parser("poset", help="Build the word poset of a word")
    _add_alphabet(poset_p)
    _add_common(poset_p)

    class_p = subparsers.add_parser("class", help="List the commutation class of a word")
    _add_alphabet(class_p)
    _add_common(class_p)

    cox_p = subparsers.add_parser("coxeter", help="Coxeter group computations")
    cox_sub = cox_p.add_subparsers(dest="subcommand", required=True)
    for name, help_text in [("check", "Is the word reduced?"),
                            ("count-reduced", "Number of reduced words of the element"),
                            ("classes", "Commutation classes of reduced words"),
                            ("cset", "The depth functions C(w)"),
                            ("recurrence", "|C(w)| by the inclusion-exclusion recurrence"),
                            ("inversions", "Inversion roots along a reduced word"),
                            ("verify", "Cross-check all counts on seeded random elements")]:
        sub = cox_sub.add_parser(name, help=help_text)
        sub.add_argument("--type", help="Named type: A3, B4, D4, E6, F4, H3, I2:7, I2:inf")
        sub.add_argument("--matrix", help="Coxeter matrix JSON file (0 encodes infinity)")
        if name == "verify":
            sub.add_argument("--seed", type=int, default=0, help="Random seed")
            sub.add_argument("--samples", type=int, default=50, help="Number of random elements")
            sub.add_argument("--max-length", type=int, default=8, help="Longest random word")
        else:
            sub.add_argument("--word", help="Generator word, e.g. s1,s2,s1")
            sub.add_argument("--perm", help="Permutation in one-line notation (type A only), e.g. 4231")
        if name == "recurrence":
            sub.add_argument("--depth", type=int, default=1, help="Levels of the expansion tree to print")
        _add_common(sub)

    return parser

def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    logging.basicConfig(level=logging.DEBUG if verbosity > 1 else logging.INFO, stream=sys.stderr,
                        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")

def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    command = args.command if args.command != "coxeter" else f"coxeter {args.subcommand}"
    try:
        budgets = Budgets.from_env(max_class_size=args.budget_class, max_memo_entries=args.budget_memo,
                                   max_down_sets=args.budget_down_sets)
        config = RunConfig(command, args.format, budgets, getattr(args, "seed", None))
    except (TypeError, ValueError) as e:
        print(f"Exit {int(ExitCode.INVALID_INPUT)}: {e}", file=sys.stderr)
        return ExitCode.INVALID_INPUT

    handlers = {"poset": cmd_poset, "class": cmd_class, "coxeter": cmd_coxeter}
    try:
        return int(handlers[args.command](args, config, out))
    except CoxCommException as e:
        logger.debug(f"{command} failed", exc_info=True)
        print(str(e), file=sys.stderr)
        return int(e.exit_code)
    except RecursionError:
        print(f"Exit {int(ExitCode.RESOURCE_LIMIT)}: recursion too deep", file=sys.stderr)
        return int(ExitCode.RESOURCE_LIMIT)
