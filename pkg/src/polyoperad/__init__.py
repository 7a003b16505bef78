"""Exact computer algebra for m-dendriform, m-tetrahedral and k-gonal operads."""

from .exactlin import LinComb, RatMatrix, kernel_basis, matrix_rank, same_span
from .trees import MTree, count_trees, enumerate_trees, parse_tree

__all__ = [
    "LinComb",
    "MTree",
    "RatMatrix",
    "count_trees",
    "enumerate_trees",
    "kernel_basis",
    "matrix_rank",
    "parse_tree",
    "same_span",
]

__version__ = "0.1.0"
