"""Exact parametric closure toolkit.

Computes, for a finite poset whose elements carry linear parametric weights
a*lam + b, the convex polygon spanned by the projections of all lower sets,
along with the lower sets that realize its vertices. On top of the polygon:
the piecewise optimum of the best lower set as lam sweeps the line, and
maximization of quasiconvex functions of the projection.

Fast paths exist for semiorders, series-parallel orders, bounded-treewidth
orders and orders of width two; everything is checked against a brute-force
enumeration oracle at small sizes.
"""

from .errors import InputFormatError, LimitExceededError, ParacloseError, StructureError
from .parametric import maximize_quasiconvex, optimum_at, profile
from .polygon import (
    EMPTY_POLYGON,
    Polygon,
    hull_of_points,
    hull_union,
    minkowski_sum,
    point,
    segment_zonotope,
)
from .poset import Poset, brute_polygon, incidence_poset, semiorder_poset
from .semiorder import Semiorder, solve_semiorder
from .series_parallel import SPTree, solve_sp, tree_to_sp
from .treewidth import TreeDecomposition, greedy_tree_decomposition, solve_treewidth
from .width2 import ChainDecomposition, chain_partition_width2, solve_width2

__all__ = [
    "EMPTY_POLYGON",
    "ChainDecomposition",
    "InputFormatError",
    "LimitExceededError",
    "ParacloseError",
    "Polygon",
    "Poset",
    "SPTree",
    "Semiorder",
    "StructureError",
    "TreeDecomposition",
    "brute_polygon",
    "chain_partition_width2",
    "greedy_tree_decomposition",
    "hull_of_points",
    "hull_union",
    "incidence_poset",
    "maximize_quasiconvex",
    "minkowski_sum",
    "optimum_at",
    "profile",
    "point",
    "segment_zonotope",
    "semiorder_poset",
    "solve_semiorder",
    "solve_sp",
    "solve_treewidth",
    "solve_width2",
    "tree_to_sp",
]

__version__ = "0.1.0"
