"""Cost terms and legality for a floorplan.

Every term is evaluated from placements alone, never from cached state,
so stored solutions can be re-verified offline. The annealing kernel
reimplements `total_cost` over flat arrays; expressions here and there
must stay literally identical (same operation order) to keep the two
backends bit-compatible.
"""

from dataclasses import dataclass, field

from .core import (BOTTOM, CORNER_EDGES, LEFT, RIGHT, TOL, TOP, DomainError,
                   Rect, rect_overlap_area, rects_abut)

CASA = "casa"
CLASSICAL = "classical"


@dataclass(frozen=True)
class CostWeights:
    """Coefficients for the weighted cost terms.

    gamma and theta only act in classical mode; the constraint-aware mode
    handles boundary and preplacement structurally instead.
    """

    alpha: float = 1.0   # wire-length
    beta: float = 0.0    # bounding-box area
    gamma: float = 10.0  # violated-constraint count (classical mode)
    eta: float = 10.0    # fixed-outline overflow
    zeta: float = 10.0   # grouping clusters
    theta: float = 10.0  # preplacement deviation (classical mode)
    mu: float = 10.0     # pairwise overlap area

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "eta", "zeta", "theta", "mu"):
            if getattr(self, name) < 0:
                raise DomainError(f"weight {name} must be non-negative")


@dataclass
class CostReport:
    """Per-term cost breakdown plus legality.

    hpwl, bbox_area, boundary_violation_count, preplaced_deviation and
    overlap_area are raw quantities; outline_cost and grouping_cost carry
    their coefficients. `legal` never depends on weighted values.
    """

    hpwl: float
    bbox_area: float
    outline_cost: float
    grouping_cost: float
    boundary_violation_count: int
    preplaced_deviation: float
    overlap_area: float
    total: float
    legal: bool
    violating_block_ids: list = field(default_factory=list)
    outline_overflow: float = 0.0
    group_clusters: list = field(default_factory=list)


def hpwl(fp, nets, terminals):
    """Half-perimeter wire-length: per net, the bounding-rect half perimeter
    of its endpoints (block center points and terminal locations)."""
    total = 0.0
    rects = fp.rects
    for net in nets:
        first = True
        min_x = max_x = min_y = max_y = 0.0
        for bid in sorted(net.block_endpoints):
            r = rects[bid]
            cx = r.x + 0.5 * r.w
            cy = r.y + 0.5 * r.h
            if first:
                min_x = max_x = cx
                min_y = max_y = cy
                first = False
            else:
                if cx < min_x:
                    min_x = cx
                if cx > max_x:
                    max_x = cx
                if cy < min_y:
                    min_y = cy
                if cy > max_y:
                    max_y = cy
        for tid in sorted(net.terminal_endpoints):
            t = terminals[tid]
            if first:
                min_x = max_x = t.x
                min_y = max_y = t.y
                first = False
            else:
                if t.x < min_x:
                    min_x = t.x
                if t.x > max_x:
                    max_x = t.x
                if t.y < min_y:
                    min_y = t.y
                if t.y > max_y:
                    max_y = t.y
        if not first:
            total += (max_x - min_x) + (max_y - min_y)
    return total


def bounding_box(fp):
    """Minimal axis-aligned rect containing all placements."""
    rects = fp.rects
    if not rects:
        raise DomainError("bounding box of an empty floorplan")
    min_x = min_y = float("inf")
    max_x = max_y = float("-inf")
    for r in rects:
        if r.x < min_x:
            min_x = r.x
        if r.y < min_y:
            min_y = r.y
        if r.x + r.w > max_x:
            max_x = r.x + r.w
        if r.y + r.h > max_y:
            max_y = r.y + r.h
    return Rect(min_x, min_y, max_x - min_x, max_y - min_y)


def outline_overflow(bbox, outline):
    """Raw overflow [bbox.W - W]+ + [bbox.H - H]+ (0 when inside)."""
    ow, oh = outline
    over_w = bbox.w - ow
    over_h = bbox.h - oh
    return (over_w if over_w > 0.0 else 0.0) + (over_h if over_h > 0.0 else 0.0)


def outline_cost(bbox, outline, eta):
    return eta * outline_overflow(bbox, outline)


def grouping_clusters(fp, group):
    """Number of abutment-connected clusters the group's blocks form."""
    members = sorted(group)
    if not members:
        raise DomainError("empty group has no cluster count")
    rects = fp.rects
    parent = list(range(len(members)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if rects_abut(rects[members[i]], rects[members[j]]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    return sum(1 for i in range(len(members)) if find(i) == i)


def grouping_cost(fp, groups, zeta):
    """zeta * sum over groups of (clusters - 1) / group size."""
    s = 0.0
    for g in groups:
        z = grouping_clusters(fp, g)
        s += (z - 1) / len(g)
    return zeta * s


# A block counts as "at" an edge of the floorplan when it lies within this
# fraction of the bounding-box span from it. Exact-edge equality would let
# at most one block per maximum edge qualify at a time (block extents are
# continuous), making multi-block edge constraints unsatisfiable.
BOUNDARY_BAND_FRAC = 0.02


def edge_satisfied(r, side, bbox):
    band_x = BOUNDARY_BAND_FRAC * bbox.w
    if band_x < TOL:
        band_x = TOL
    band_y = BOUNDARY_BAND_FRAC * bbox.h
    if band_y < TOL:
        band_y = TOL
    if side == LEFT:
        return r.x - bbox.x <= band_x
    if side == RIGHT:
        return (bbox.x + bbox.w) - (r.x + r.w) <= band_x
    if side == BOTTOM:
        return r.y - bbox.y <= band_y
    if side == TOP:
        return (bbox.y + bbox.h) - (r.y + r.h) <= band_y
    raise DomainError(f"unknown boundary side {side!r}")


def boundary_violations(fp, constraints, bbox=None):
    """Ids of boundary-constrained blocks not at their required edge(s) of
    the current bounding box, ascending."""
    if not constraints.boundary:
        return []
    if bbox is None:
        bbox = bounding_box(fp)
    out = []
    for bid in sorted(constraints.boundary):
        side = constraints.boundary[bid]
        edges = CORNER_EDGES.get(side, (side,))
        r = fp.rects[bid]
        if not all(edge_satisfied(r, e, bbox) for e in edges):
            out.append(bid)
    return out


def preplaced_cost(fp, constraints, theta):
    return theta * preplaced_deviation(fp, constraints)


def preplaced_deviation(fp, constraints):
    """Raw L1 deviation of preplaced blocks from their target positions."""
    dev = 0.0
    for bid in sorted(constraints.preplaced):
        tx, ty = constraints.preplaced[bid][0], constraints.preplaced[bid][1]
        r = fp.rects[bid]
        dev += abs(r.x - tx) + abs(r.y - ty)
    return dev


def total_overlap_area(fp):
    total = 0.0
    rects = fp.rects
    n = len(rects)
    for i in range(n):
        for j in range(i + 1, n):
            total += rect_overlap_area(rects[i], rects[j])
    return total


def total_cost(fp, problem, weights, mode, assume_no_overlap=False):
    """Evaluate all cost terms and legality.

    casa mode:      alpha*hpwl + beta*area + outline + grouping + mu*overlap
                    (boundary is repaired by moves, preplacement by anchoring;
                    gamma and theta are structurally absent)
    classical mode: adds gamma*(boundary violations + split groups) and
                    theta*preplacement deviation on top of the casa terms.

    assume_no_overlap skips the quadratic overlap scan; only pass it for
    floorplans produced by contour packing without anchored blocks, where
    the overlap is zero by construction.
    """
    if mode not in (CASA, CLASSICAL):
        raise DomainError(f"unknown cost mode {mode!r}")
    cs = problem.constraints
    wire = hpwl(fp, problem.nets, problem.terminals)
    bbox = bounding_box(fp)
    bbox_area = bbox.w * bbox.h

    over = 0.0
    ocost = 0.0
    if problem.outline is not None:
        over = outline_overflow(bbox, problem.outline)
        ocost = weights.eta * over

    clusters = [grouping_clusters(fp, g) for g in cs.groups]
    gsum = 0.0
    for z, g in zip(clusters, cs.groups):
        gsum += (z - 1) / len(g)
    gcost = weights.zeta * gsum
    unsat_groups = sum(1 for z in clusters if z > 1)

    violators = boundary_violations(fp, cs, bbox)
    predev = preplaced_deviation(fp, cs)
    overlap = 0.0 if assume_no_overlap else total_overlap_area(fp)

    total = weights.alpha * wire + weights.beta * bbox_area + ocost + gcost \
        + weights.mu * overlap
    if mode == CLASSICAL:
        total += weights.gamma * (len(violators) + unsat_groups) \
            + weights.theta * predev

    legal = (not violators
             and unsat_groups == 0
             and overlap <= TOL
             and predev <= TOL
             and (problem.outline is None
                  or (bbox.w - problem.outline[0] <= TOL
                      and bbox.h - problem.outline[1] <= TOL)))

    return CostReport(
        hpwl=wire,
        bbox_area=bbox_area,
        outline_cost=ocost,
        grouping_cost=gcost,
        boundary_violation_count=len(violators),
        preplaced_deviation=predev,
        overlap_area=overlap,
        total=total,
        legal=legal,
        violating_block_ids=violators,
        outline_overflow=over,
        group_clusters=clusters,
    )
