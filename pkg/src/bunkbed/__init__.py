"""Exact and Monte Carlo tools for bunkbed percolation on forests."""

from .errors import (
    BunkbedError,
    DisconnectedTerminals,
    DuplicateEdge,
    EmptyH,
    InvalidParameters,
    LabelOutOfRange,
    NotAForest,
    SelfLoop,
    TooLarge,
    ValidationError,
)
from .exact import (
    ReliabilityPolynomial,
    SignedReliabilityPolynomial,
    bunkbed_difference,
    bunkbed_polynomials,
    evaluate,
    exact_reliability,
    verify_nonnegative_on_grid,
)
from .graph import Forest, Graph, all_labeled_trees, is_forest, random_forest, random_tree, unique_path, validate
from .kernels import BACKEND
from .model import BunkbedGraph, EdgeConfiguration, TransversalSet, build_bunkbed, connected
from .montecarlo import McEstimate, estimate
from .path import PathInstance, check_path_equality, check_path_factorization, max_transversal
from .reduction import (
    certify_reduction,
    check_equivalence,
    compute_h_prime,
    conditional_reliability,
    decompose,
    verify_tower,
)
from .verifier import SweepReport, SweepSpec, run_sweep

__all__ = [
    "all_labeled_trees",
    "BACKEND",
    "build_bunkbed",
    "bunkbed_difference",
    "bunkbed_polynomials",
    "BunkbedError",
    "BunkbedGraph",
    "certify_reduction",
    "check_equivalence",
    "check_path_equality",
    "check_path_factorization",
    "compute_h_prime",
    "conditional_reliability",
    "connected",
    "decompose",
    "DisconnectedTerminals",
    "DuplicateEdge",
    "EdgeConfiguration",
    "EmptyH",
    "estimate",
    "evaluate",
    "exact_reliability",
    "Forest",
    "Graph",
    "InvalidParameters",
    "is_forest",
    "LabelOutOfRange",
    "max_transversal",
    "McEstimate",
    "NotAForest",
    "PathInstance",
    "random_forest",
    "random_tree",
    "ReliabilityPolynomial",
    "run_sweep",
    "SelfLoop",
    "SignedReliabilityPolynomial",
    "SweepReport",
    "SweepSpec",
    "TooLarge",
    "TransversalSet",
    "unique_path",
    "validate",
    "ValidationError",
    "verify_nonnegative_on_grid",
    "verify_tower",
]

__version__ = "0.1.0"
