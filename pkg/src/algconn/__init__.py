"""Largest Laplacian eigenvalue minimisation and algebraic connectivity maximisation.

Maximising algebraic connectivity over graphs with ``n`` vertices and ``m``
edges is the same as minimising the largest Laplacian eigenvalue over their
complements.  This package builds unions of complete graphs that are local
minimisers, certifies global minimality where possible, and checks the
claims numerically and by exhaustive search.
"""

from .graph_core import (Graph, GraphError, Partition, build_from_edge_list,
                         build_union_complete, complement, laplacian)
from .spectral import eig_symmetric, lambda1, laplacian_spectrum
from .partition_builder import algorithm1, certify
from .neighborhood import Move, apply_move, verify_lelm
from .circulant import CirculantSet, circulant_graph, dft_spectrum

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphError", "Partition", "build_from_edge_list", "build_union_complete",
    "complement", "laplacian", "eig_symmetric", "lambda1", "laplacian_spectrum",
    "algorithm1", "certify", "Move", "apply_move", "verify_lelm",
    "CirculantSet", "circulant_graph", "dft_spectrum",
]
