"""b-nested common and conserved intervals of permutation sets.

The library renumbers every input so the first permutation is the identity,
builds the PQ-tree of common intervals or the strong-interval inclusion tree
of conserved intervals, and enumerates or counts the b-nested members in
time proportional to tree size plus output size.  A brute-force oracle
(bnest.oracle) provides independent ground truth for small instances.
"""

from .core import (
    BadFrame,
    DuplicateElement,
    Interval,
    LengthMismatch,
    NotAPermutation,
    Permutation,
    PermutationError,
    PermutationSet,
    SignedPermutation,
    apply_frame,
    format_permutations,
    is_common_interval,
    is_conserved_interval,
    normalize,
    parse_permutations,
    validate_conserved_frame,
)
from .pqtree import PQNode, PQTree, build_pqtree, strong_common_intervals, weak_intervals_of_qnode
from .common_enum import (
    NestedReport,
    NodeAnnotation,
    ScanStats,
    annotate,
    count_b_nested_common,
    enumerate_b_nested_common,
    nested_common_report,
)
from .conserved_tree import (
    ConservedNode,
    ConservedTree,
    InternalStructureError,
    build_conserved_tree,
    irreducible_conserved_intervals,
    weak_conserved_intervals,
)
from .conserved_enum import (
    GapAnnotation,
    annotate_conserved,
    count_b_nested_conserved,
    enumerate_b_nested_conserved,
    weak_b_nested,
)

__version__ = "0.1.0"

__all__ = [
    "BadFrame",
    "ConservedNode",
    "ConservedTree",
    "DuplicateElement",
    "GapAnnotation",
    "InternalStructureError",
    "Interval",
    "LengthMismatch",
    "NestedReport",
    "NodeAnnotation",
    "NotAPermutation",
    "PQNode",
    "PQTree",
    "Permutation",
    "PermutationError",
    "PermutationSet",
    "ScanStats",
    "SignedPermutation",
    "annotate",
    "annotate_conserved",
    "apply_frame",
    "build_conserved_tree",
    "build_pqtree",
    "count_b_nested_common",
    "count_b_nested_conserved",
    "enumerate_b_nested_common",
    "enumerate_b_nested_conserved",
    "format_permutations",
    "irreducible_conserved_intervals",
    "is_common_interval",
    "is_conserved_interval",
    "nested_common_report",
    "normalize",
    "parse_permutations",
    "strong_common_intervals",
    "validate_conserved_frame",
    "weak_b_nested",
    "weak_conserved_intervals",
    "weak_intervals_of_qnode",
]
