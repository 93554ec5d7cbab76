"""Exact solvers and building blocks for (weighted) F-Hitting on sparse graphs."""
from .graph import Graph, GraphInputError
from .pattern import FCopy, PatternFamily, enumerate_copies, is_family_free, preset_family
from .kernel import KernelResult, kernelize
from .branching import CollectionBundle, clique_reduce, generate_collections, reduce_to_instances
from .hitting import HittingInstance, gaifman_graph, min_weight_hitting_set, tree_decomposition
from .solver import Solution, SolverConfig, WeightedInstance, oracle_solve, solve

__all__ = [
    "Graph", "GraphInputError", "FCopy", "PatternFamily", "enumerate_copies", "is_family_free",
    "preset_family", "KernelResult", "kernelize", "CollectionBundle", "clique_reduce",
    "generate_collections", "reduce_to_instances", "HittingInstance", "gaifman_graph",
    "min_weight_hitting_set", "tree_decomposition", "Solution", "SolverConfig",
    "WeightedInstance", "oracle_solve", "solve",
]
