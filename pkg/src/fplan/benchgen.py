"""Deterministic constraint augmentation for unconstrained benchmarks.

Picks disjoint block sets and assigns four edge groups, four corner
blocks, three abutment groups and ten anchored blocks at random positions
inside the fixed outline — the standard recipe for turning a legacy
benchmark into a constrained one.
"""

import math
from dataclasses import dataclass

from .core import BOTTOM, LEFT, RIGHT, TOP, ConstraintSet, DomainError, dims_from_ar
from .rng import Rng

EDGE_ORDER = (LEFT, RIGHT, TOP, BOTTOM)
CORNER_ORDER = ("bl", "br", "tl", "tr")


@dataclass(frozen=True)
class AugmentSpec:
    n_edge_groups: int = 4
    edge_group_size: int = 7
    n_corner_blocks: int = 4
    n_grouping_groups: int = 3
    grouping_group_size: int = 3
    n_preplaced: int = 10
    seed: int = 0

    @property
    def total_picked(self):
        return (self.n_edge_groups * self.edge_group_size + self.n_corner_blocks
                + self.n_grouping_groups * self.grouping_group_size
                + self.n_preplaced)


def derive_fixed_outline(problem, slack=0.10):
    """Square outline whose area exceeds the total block area by `slack`."""
    side = math.sqrt((1.0 + slack) * problem.total_block_area)
    return (side, side)


def augment(problem, spec):
    """Draw the constraint set for `problem` under `spec` (pure in both)."""
    n = len(problem.blocks)
    if n < spec.total_picked:
        raise DomainError(f"need at least {spec.total_picked} blocks to "
                          f"augment, problem has {n}")
    if problem.outline is None:
        raise DomainError("augmentation requires a fixed outline")
    outline_w, outline_h = problem.outline

    rng = Rng(spec.seed)
    order = list(range(n))
    rng.shuffle(order)
    it = iter(order)

    boundary = {}
    for gi in range(spec.n_edge_groups):
        side = EDGE_ORDER[gi % len(EDGE_ORDER)]
        for _ in range(spec.edge_group_size):
            boundary[next(it)] = side
    for ci in range(spec.n_corner_blocks):
        boundary[next(it)] = CORNER_ORDER[ci % len(CORNER_ORDER)]

    groups = []
    for _ in range(spec.n_grouping_groups):
        groups.append(frozenset(next(it) for _ in range(spec.grouping_group_size)))

    preplaced = {}
    for _ in range(spec.n_preplaced):
        bid = next(it)
        block = problem.blocks[bid]
        w, h = dims_from_ar(block.area, block.aspect_ratio)
        x = rng.uniform_range(0.0, max(outline_w - w, 0.0))
        y = rng.uniform_range(0.0, max(outline_h - h, 0.0))
        preplaced[bid] = (x, y, w, h)

    return ConstraintSet(boundary=boundary, groups=tuple(groups),
                         preplaced=preplaced)
