"""
Word posets, commutation classes and reduced words in Coxeter groups.

Two words are in the same commutation class when one turns into the other by
swapping adjacent commuting letters. This library materializes the word
poset picture of commutation classes, allowing you to:

- Build the word poset of a word and export its Hasse diagram
- Enumerate and count the words of a commutation class via linear extensions
- Work with Coxeter groups in their exact reflection representation
- Recognize, count and enumerate reduced words
- Compute inversion sets, the depth functions C(w) and the inclusion-exclusion
  recurrence for the number of commutation classes of reduced words

The library is organized into several modules:

- `coxcomm.coxcomm_types`: defines public types and exceptions
- `coxcomm.coxcomm_config`: defines the resource budgets and run configuration
- `coxcomm.trace_core`: alphabets, word posets, linear extensions and classes
- `coxcomm.scalar`: exact arithmetic in Q(2cos(pi/N))
- `coxcomm.coxeter`: Coxeter systems, roots, descents and reduced words
- `coxcomm.commclass`: lambda functions, C(w) and the class-count recurrence
- `coxcomm.typea`: permutations as elements of type A
- `coxcomm.cli`: the command line front end (`python -m coxcomm`)

The main entry points are:

- `Alphabet` and `build_poset`: word posets of words over any commutation alphabet
- `CoxeterSystem`: a Coxeter group, built from a matrix or a named type
- `c_set` and `c_count_recurrence`: the commutation classes of an element

"""

import logging

from .coxcomm_types import (CoxCommException, InvalidInputError, NotReducedError, DescentError,
                            MixedSignsError, ResourceLimitError, InvariantViolationError,
                            UndefinedExtensionError, OutputFormat, RootSign, ExtensionRule)
from .coxcomm_config import Budgets, RunConfig
from .trace_core import (Alphabet, WordPoset, build_poset, verify_word_poset, linear_extensions,
                         count_linear_extensions, commutation_class_bfs, canonical_word, same_class,
                         posets_isomorphic, depth_function, depth_layers)
from .scalar import Scalar, ScalarContext, make_context
from .coxeter import (CoxeterSystem, GroupElement, RootVec, build_system, reflect, apply, compose,
                      generator_element, element_from_word, root_sign, is_reduced, right_descents,
                      left_descents, canonical_reduced_word, length, reduce_word, inversion_set,
                      count_reduced_words, enumerate_reduced_words, longest_element, enumerate_elements)
from .commclass import (LambdaFunction, CSet, phi_bijection, lambda_of_poset, extend_lambda, c_set,
                        c_count_recurrence, recurrence_tree, enumerate_commutation_classes,
                        independent_subsets, is_321_avoiding, verify_element)
from .typea import Permutation, perm_to_element, element_to_perm

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

# Metadata
__version__ = "0.1.0"
__license__ = "MIT"
__description__ = "Word posets, commutation classes and reduced words in Coxeter groups"
__status__ = "Development"

__all__ = [
    # coxcomm_types.py
    "CoxCommException",
    "InvalidInputError",
    "NotReducedError",
    "DescentError",
    "MixedSignsError",
    "ResourceLimitError",
    "InvariantViolationError",
    "UndefinedExtensionError",
    "OutputFormat",
    "RootSign",
    "ExtensionRule",

    # coxcomm_config.py
    "Budgets",
    "RunConfig",

    # trace_core.py
    "Alphabet",
    "WordPoset",
    "build_poset",
    "verify_word_poset",
    "linear_extensions",
    "count_linear_extensions",
    "commutation_class_bfs",
    "canonical_word",
    "same_class",
    "posets_isomorphic",
    "depth_function",
    "depth_layers",

    # scalar.py
    "Scalar",
    "ScalarContext",
    "make_context",

    # coxeter.py
    "CoxeterSystem",
    "GroupElement",
    "RootVec",
    "build_system",
    "reflect",
    "apply",
    "compose",
    "generator_element",
    "element_from_word",
    "root_sign",
    "is_reduced",
    "right_descents",
    "left_descents",
    "canonical_reduced_word",
    "length",
    "reduce_word",
    "inversion_set",
    "count_reduced_words",
    "enumerate_reduced_words",
    "longest_element",
    "enumerate_elements",

    # commclass.py
    "LambdaFunction",
    "CSet",
    "phi_bijection",
    "lambda_of_poset",
    "extend_lambda",
    "c_set",
    "c_count_recurrence",
    "recurrence_tree",
    "enumerate_commutation_classes",
    "independent_subsets",
    "is_321_avoiding",
    "verify_element",

    # typea.py
    "Permutation",
    "perm_to_element",
    "element_to_perm",
]
