"""Domain types shared by every module: blocks, nets, constraints, floorplans."""

import math
from dataclasses import dataclass, field, replace

# Absolute tolerance for edge alignment, abutment and legality checks.
# Benchmark coordinates are integers, so anything well below 0.5 is safe.
TOL = 1e-9

LEFT = "left"
RIGHT = "right"
TOP = "top"
BOTTOM = "bottom"
# Corner constraints: both named edges must hold.
CORNER_EDGES = {
    "bl": (LEFT, BOTTOM),
    "br": (RIGHT, BOTTOM),
    "tl": (LEFT, TOP),
    "tr": (RIGHT, TOP),
}
BOUNDARY_SIDES = (LEFT, RIGHT, TOP, BOTTOM) + tuple(CORNER_EDGES)


class DomainError(ValueError):
    """Raised when an operation is called outside its domain."""


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise DomainError(f"rect must have positive extent, got {self.w}x{self.h}")

    @property
    def x2(self):
        return self.x + self.w

    @property
    def y2(self):
        return self.y + self.h

    @property
    def area(self):
        return self.w * self.h

    @property
    def cx(self):
        return self.x + 0.5 * self.w

    @property
    def cy(self):
        return self.y + 0.5 * self.h


@dataclass(frozen=True)
class Block:
    id: int
    name: str
    area: float
    aspect_ratio: float  # width / height
    ar_min: float
    ar_max: float
    is_soft: bool
    instance_group: int | None = None


@dataclass(frozen=True)
class Terminal:
    name: str
    x: float
    y: float


@dataclass(frozen=True)
class Net:
    block_endpoints: frozenset
    terminal_endpoints: frozenset

    def __post_init__(self):
        object.__setattr__(self, "block_endpoints", frozenset(self.block_endpoints))
        object.__setattr__(self, "terminal_endpoints", frozenset(self.terminal_endpoints))


@dataclass(frozen=True)
class ConstraintSet:
    boundary: dict = field(default_factory=dict)      # block id -> side/corner
    groups: tuple = ()                                # tuple of frozensets of block ids
    preplaced: dict = field(default_factory=dict)     # block id -> (x, y, w, h)
    instance_groups: tuple = ()                       # tuple of frozensets of block ids

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(frozenset(g) for g in self.groups))
        object.__setattr__(
            self, "instance_groups", tuple(frozenset(g) for g in self.instance_groups)
        )

    @property
    def empty(self):
        return not (self.boundary or self.groups or self.preplaced or self.instance_groups)


@dataclass(frozen=True)
class Problem:
    blocks: tuple
    terminals: tuple = ()
    nets: tuple = ()
    constraints: ConstraintSet = field(default_factory=ConstraintSet)
    outline: tuple | None = None  # (W, H)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "nets", tuple(self.nets))

    def block_by_name(self, name):
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(name)

    def with_constraints(self, constraints, outline=None):
        return replace(self, constraints=constraints,
                       outline=self.outline if outline is None else outline)

    @property
    def total_block_area(self):
        return sum(b.area for b in self.blocks)


@dataclass
class Floorplan:
    """Concrete placement: one Rect per block, indexed by block id."""

    rects: list
    problem: Problem

    def rect(self, block_id):
        return self.rects[block_id]


@dataclass(frozen=True)
class Issue:
    """A violated problem invariant. Issues are data, not failures."""

    code: str
    entity: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.entity}: {self.message}"


def dims_from_ar(area, ar):
    """Width/height of a rectangle with the given area and width:height ratio."""
    if area <= 0 or ar <= 0:
        raise DomainError(f"area and aspect ratio must be positive, got {area}, {ar}")
    return math.sqrt(area * ar), math.sqrt(area / ar)


def rect_overlap_area(a, b):
    dx = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    dy = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    if dx <= 0.0 or dy <= 0.0:
        return 0.0
    return dx * dy


def rects_abut(a, b, tol=TOL):
    """True when two rects share a boundary segment of positive length.

    Corner-point contact is not adjacency. Rects with positive-area
    overlap count as adjacent (they cannot be in distinct clusters).
    """
    dx = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    dy = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    if dx < -tol or dy < -tol:
        return False
    return dx > tol or dy > tol


def validate_problem(problem):
    """Check every Problem invariant; return a list of Issues (empty = valid)."""
    issues = []
    ids = {b.id for b in problem.blocks}
    n_terms = len(problem.terminals)

    for b in problem.blocks:
        if b.area <= 0:
            issues.append(Issue("BadArea", b.name, f"area {b.area} is not positive"))
        if b.ar_min <= 0 or b.ar_max <= 0 or b.ar_min > b.ar_max:
            issues.append(Issue("BadAspectBounds", b.name,
                                f"invalid aspect bounds [{b.ar_min}, {b.ar_max}]"))
        elif not (b.ar_min - TOL <= b.aspect_ratio <= b.ar_max + TOL):
            issues.append(Issue("AspectOutOfBounds", b.name,
                                f"aspect ratio {b.aspect_ratio} outside "
                                f"[{b.ar_min}, {b.ar_max}]"))

    for i, net in enumerate(problem.nets):
        if not net.block_endpoints and not net.terminal_endpoints:
            issues.append(Issue("EmptyNet", f"net{i}", "net has no endpoints"))
        for bid in net.block_endpoints:
            if bid not in ids:
                issues.append(Issue("UnknownEndpoint", f"net{i}",
                                    f"references unknown block id {bid}"))
        for tid in net.terminal_endpoints:
            if not 0 <= tid < n_terms:
                issues.append(Issue("UnknownEndpoint", f"net{i}",
                                    f"references unknown terminal id {tid}"))

    cs = problem.constraints
    for bid, side in cs.boundary.items():
        if bid not in ids:
            issues.append(Issue("UnknownBlock", str(bid), "boundary constraint on unknown block"))
        if side not in BOUNDARY_SIDES:
            issues.append(Issue("BadBoundarySide", str(bid), f"unknown side {side!r}"))
        if bid in cs.preplaced:
            issues.append(Issue("ConflictingConstraint", str(bid),
                                "block is both boundary-constrained and preplaced"))

    for bid, (x, y, w, h) in cs.preplaced.items():
        if bid not in ids:
            issues.append(Issue("UnknownBlock", str(bid), "preplacement on unknown block"))
            continue
        if w <= 0 or h <= 0:
            issues.append(Issue("BadPreplacedDims", str(bid),
                                f"preplaced extent {w}x{h} is not positive"))
        if problem.outline is not None:
            ow, oh = problem.outline
            if x < -TOL or y < -TOL or x + w > ow + TOL or y + h > oh + TOL:
                issues.append(Issue("PreplacedOutsideOutline", str(bid),
                                    f"rect ({x}, {y}, {w}, {h}) leaves outline "
                                    f"{ow}x{oh}"))

    for label, group_list in (("group", cs.groups), ("instance group", cs.instance_groups)):
        for i, g in enumerate(group_list):
            if len(g) < 2:
                issues.append(Issue("GroupTooSmall", f"{label} {i}",
                                    f"has {len(g)} member(s), need at least 2"))
            for bid in g:
                if bid not in ids:
                    issues.append(Issue("UnknownBlock", f"{label} {i}",
                                        f"references unknown block id {bid}"))

    return issues
