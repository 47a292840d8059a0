"""Exhaustive unlabeled-tree enumeration with exact independence polynomials.

The pipeline enumerates every non-isomorphic unlabeled tree up to a vertex
bound, computes each tree's independence polynomial exactly, verifies that
the coefficient sequences are log-concave and unimodal, and reproduces a
set of statistical analyses over the resulting corpus.
"""

from .analysis import (
    Report,
    argmax_histogram,
    duplicate_groups,
    special_sequences,
    verify_flags,
)
from .canon import code_compare, decode, free_code, rooted_code
from .counts import UNLABELED_TREE_COUNTS
from .enumeration import LevelPlan, RunSummary, enumerate_level, expand, run
from .errors import (
    CoefficientOverflowError,
    CountMismatchError,
    EdgeListParseError,
    InvalidCodeError,
    RecordInvariantError,
    SealedLevelError,
    StoreCorruptionError,
    TreepolyError,
    UnsealedLevelError,
)
from .indpoly import MemoCache, brute_force_polynomial, independence_polynomial
from .poly import (
    argmax_lowest,
    combine,
    is_fibonacci,
    is_log_concave,
    is_monotonic,
    is_symmetric,
    is_unimodal,
    mul,
)
from .store import LevelManifest, Store, TreeRecord
from .tree import (
    Forest,
    Tree,
    centers,
    closed_neighborhood,
    degree_sequence,
    delete_vertices,
    parse_edge_list,
)

__version__ = "0.1.0"

__all__ = [
    "Forest",
    "LevelManifest",
    "LevelPlan",
    "MemoCache",
    "Report",
    "RunSummary",
    "Store",
    "Tree",
    "TreeRecord",
    "UNLABELED_TREE_COUNTS",
    "argmax_histogram",
    "argmax_lowest",
    "brute_force_polynomial",
    "centers",
    "closed_neighborhood",
    "code_compare",
    "combine",
    "decode",
    "degree_sequence",
    "delete_vertices",
    "duplicate_groups",
    "enumerate_level",
    "expand",
    "free_code",
    "independence_polynomial",
    "is_fibonacci",
    "is_log_concave",
    "is_monotonic",
    "is_symmetric",
    "is_unimodal",
    "mul",
    "parse_edge_list",
    "rooted_code",
    "run",
    "special_sequences",
    "verify_flags",
    "CoefficientOverflowError",
    "CountMismatchError",
    "EdgeListParseError",
    "InvalidCodeError",
    "RecordInvariantError",
    "SealedLevelError",
    "StoreCorruptionError",
    "TreepolyError",
    "UnsealedLevelError",
]
