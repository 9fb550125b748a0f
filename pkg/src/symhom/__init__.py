"""Exact-integer symmetric homology of finite-rank algebras.

The package computes HS_0 and HS_1 of a unital associative algebra over
the integers from its structure constants, together with the Pontryagin
product on HS_0 and the HS_0-module structure on HS_1, and carries the
combinatorial machinery behind those computations: a symmetric-group and
block-permutation calculus, the category of non-commutative sets with its
operad-module structure, exact Smith-normal-form linear algebra, truncated
nerves with the Eilenberg-Zilber shuffle, and the descriptor calculus of
the mod-p homology operations.
"""

from .algebra import (
    FinRankAlgebra,
    builtin_algebra,
    cyclic_group_algebra,
    load_algebra,
    load_algebra_file,
    matrix_algebra,
    multiply,
    truncated_polynomial,
    validate,
)
from .homalg import AbelianGroup, IntMatrix, SnfResult, homology, smith_normal_form
from .hs import (
    HsClass,
    build_partial_complex,
    hs0,
    hs0_class,
    hs1,
    hs1_class,
    laststep_equivalence,
    merge_tree,
    module_action,
    path_sum,
    pontryagin_hs0,
    triviality_check,
    unit_class,
)
from .ncset import NCMorphism, parse_tensor_word, print_tensor_word
from .operad import check_operad_axioms, delta, k_pseudo_compose, mu
from .perm import Permutation, block_permutation, direct_sum
from .report import hs_report, make_table

__version__ = "0.1.0"
