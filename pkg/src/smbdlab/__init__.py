"""Exact Staller-Maker-Breaker domination numbers for small graphs."""

from .graphs import (
    Graph,
    GraphFormatError,
    Matching,
    NotATreeError,
    caterpillar,
    sample_caterpillar,
    parse_edge_list,
    parse_graph6,
    path_graph,
    star_graph,
    subdivided_star,
    to_graph6,
)
from .hypergraph import INF, Hypergraph, closed_neighborhood_hypergraph
from .solver import Solver, SolveResult, gamma_smb, gamma_smb_prime, solve_tree_sgame
from .trees import CapExceededError, canonical_graph6, enumerate_trees

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphFormatError",
    "Matching",
    "NotATreeError",
    "caterpillar",
    "sample_caterpillar",
    "parse_edge_list",
    "parse_graph6",
    "path_graph",
    "star_graph",
    "subdivided_star",
    "to_graph6",
    "INF",
    "Hypergraph",
    "closed_neighborhood_hypergraph",
    "Solver",
    "SolveResult",
    "gamma_smb",
    "gamma_smb_prime",
    "solve_tree_sgame",
    "CapExceededError",
    "canonical_graph6",
    "enumerate_trees",
]
