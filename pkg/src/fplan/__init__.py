"""Constraint-aware B*-tree floorplanner with a parallel annealing pool."""

from .annealer import AnnealConfig, SolutionRecord, run
from .benchgen import AugmentSpec, augment, derive_fixed_outline
from .btree import BStarTree, Contour, pack, random_tree, tree_from_layout
from .core import (Block, ConstraintSet, DomainError, Floorplan, Net, Problem,
                   Rect, Terminal, dims_from_ar, rect_overlap_area,
                   validate_problem)
from .cost import (CASA, CLASSICAL, CostReport, CostWeights, bounding_box,
                   boundary_violations, grouping_clusters, grouping_cost,
                   hpwl, outline_cost, preplaced_cost, total_cost)
from .io import (BookshelfBundle, ParseError, parse_bookshelf,
                 parse_constraints, read_records, render_svg, write_records)
from .parallel import ParetoPoint, PoolConfig, pareto_front, run_pool

__version__ = "0.1.0"

__all__ = [
    "AnnealConfig", "AugmentSpec", "BStarTree", "Block", "BookshelfBundle",
    "CASA", "CLASSICAL", "ConstraintSet", "Contour", "CostReport",
    "CostWeights", "DomainError", "Floorplan", "Net", "ParetoPoint",
    "ParseError", "PoolConfig", "Problem", "Rect", "SolutionRecord",
    "Terminal", "augment", "bounding_box", "boundary_violations",
    "derive_fixed_outline", "dims_from_ar", "grouping_clusters",
    "grouping_cost", "hpwl", "outline_cost", "pack", "pareto_front",
    "parse_bookshelf", "parse_constraints", "preplaced_cost", "random_tree",
    "read_records", "rect_overlap_area", "render_svg", "run", "run_pool",
    "total_cost", "tree_from_layout", "validate_problem", "write_records",
]
