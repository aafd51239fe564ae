"""B*-tree floorplan representation: contour packing, mutation moves,
layout-to-tree translation.

Node slots are fixed integers; each slot holds a block id (``block_of``),
so swapping two blocks never touches the link arrays. Geometry convention:
a node's left child is packed immediately to the right of it, a right
child is packed above it. Blocks with a preplacement constraint are
anchored: they keep their constrained position and extent, but still sit
in the tree and push the contour for their children.

The compiled kernel in ``_kernel.pyx`` reimplements packing and the moves
over flat arrays; any semantic change here must be mirrored there (the
backend-parity tests compare the two bit-for-bit).
"""

import math
from dataclasses import dataclass

from .core import DomainError, Floorplan, Rect, dims_from_ar

LEFT = "left"
RIGHT = "right"

NEG_INF = float("-inf")

# Aspect-ratio perturbation multiplier range: small enough for fine
# refinement, large enough to traverse [1/3, 3] in about a dozen steps.
AR_STEP_LO = 1.0 / 1.2
AR_STEP_HI = 1.2


class Contour:
    """Skyline of placed block tops.

    Stored as (x_start, height) breakpoints, ascending in x; a segment
    extends to the next breakpoint and the last one to +infinity. The
    leading sentinel keeps queries left of the origin well defined
    (anchored blocks may sit anywhere).
    """

    __slots__ = ("segs",)

    def __init__(self):
        self.segs = [(NEG_INF, 0.0)]

    def max_height(self, x0, x1):
        """Maximum height over the span [x0, x1)."""
        segs = self.segs
        best = 0.0
        n = len(segs)
        for i in range(n):
            sx, sh = segs[i]
            if sx >= x1:
                break
            end = segs[i + 1][0] if i + 1 < n else math.inf
            if end <= x0:
                continue
            if sh > best:
                best = sh
        return best

    def height_at(self, x):
        h = self.segs[0][1]
        for sx, sh in self.segs:
            if sx <= x:
                h = sh
            else:
                break
        return h

    def set_height(self, x0, x1, h):
        """Assign height h over [x0, x1), splitting and re-merging segments."""
        tail_h = self.height_at(x1)
        out = [s for s in self.segs if s[0] < x0]
        out.append((x0, h))
        out.append((x1, tail_h))
        out.extend(s for s in self.segs if s[0] > x1)
        merged = [out[0]]
        for s in out[1:]:
            if s[1] != merged[-1][1]:
                merged.append(s)
        self.segs = merged


class BStarTree:
    """Mutable B*-tree over all blocks of a problem.

    Structure arrays are indexed by node slot; ``block_of``/``node_of``
    map between slots and block ids. Per-block shape state is the
    aspect ratio plus the concrete width/height derived from it (kept
    explicitly so a tree built from an existing layout reproduces that
    layout bit-for-bit).
    """

    def __init__(self, problem):
        n = len(problem.blocks)
        if n == 0:
            raise DomainError("cannot build a tree over zero blocks")
        self.problem = problem
        self.parent = [-1] * n
        self.left = [-1] * n
        self.right = [-1] * n
        self.block_of = list(range(n))
        self.node_of = list(range(n))
        self.root = 0
        self.ar = [1.0] * n
        self.w = [0.0] * n
        self.h = [0.0] * n
        groups = {}
        for g in problem.constraints.instance_groups:
            members = tuple(sorted(g))
            for bid in g:
                groups[bid] = members
        self._inst_members = groups
        pre = problem.constraints.preplaced
        self.soft_eligible = tuple(
            b.id for b in problem.blocks if b.is_soft and b.id not in pre)

    @property
    def n(self):
        return len(self.block_of)

    def set_ar(self, bid, ar):
        """Set a block's aspect ratio and rederive its extent."""
        b = self.problem.blocks[bid]
        self.ar[bid] = ar
        self.w[bid], self.h[bid] = dims_from_ar(b.area, ar)

    def snapshot(self):
        return (list(self.parent), list(self.left), list(self.right),
                list(self.block_of), list(self.node_of), self.root,
                list(self.ar), list(self.w), list(self.h))

    def restore(self, snap):
        (self.parent, self.left, self.right, self.block_of, self.node_of,
         self.root, self.ar, self.w, self.h) = \
            (list(snap[0]), list(snap[1]), list(snap[2]), list(snap[3]),
             list(snap[4]), snap[5], list(snap[6]), list(snap[7]), list(snap[8]))

    def structure_issues(self):
        """Structural invariant check; returns a list of violation strings."""
        n = self.n
        issues = []
        if not 0 <= self.root < n:
            return [f"root {self.root} out of range"]
        if self.parent[self.root] != -1:
            issues.append("root has a parent")
        seen = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node in seen:
                issues.append(f"node {node} reached twice (cycle)")
                break
            seen.add(node)
            for side, child in ((LEFT, self.left[node]), (RIGHT, self.right[node])):
                if child != -1:
                    if self.parent[child] != node:
                        issues.append(f"{side} child {child} of {node} has bad parent link")
                    stack.append(child)
        if len(seen) != n:
            issues.append(f"{n - len(seen)} node(s) unreachable from root")
        if sorted(self.block_of) != list(range(n)):
            issues.append("block_of is not a permutation")
        for node in range(n):
            if self.node_of[self.block_of[node]] != node:
                issues.append(f"node_of/block_of mismatch at node {node}")
        return issues

    # -- mutations ---------------------------------------------------------

    def swap_nodes(self, a, b):
        """Exchange the tree positions of blocks a and b (shape travels along)."""
        if a == b:
            raise DomainError("cannot swap a block with itself")
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise DomainError(f"unknown block id in swap: {a}, {b}")
        na, nb = self.node_of[a], self.node_of[b]
        self.block_of[na], self.block_of[nb] = b, a
        self.node_of[a], self.node_of[b] = nb, na

    def _first_free_right(self, start):
        # First node in preorder (node, left subtree, right subtree) whose
        # right slot is free. Every finite subtree has one.
        stack = [start]
        while stack:
            node = stack.pop()
            if self.right[node] == -1:
                return node
            stack.append(self.right[node])
            if self.left[node] != -1:
                stack.append(self.left[node])
        raise AssertionError("subtree without a free right slot")

    def _detach(self, node):
        # Remove a single node. With two children the left child is
        # promoted into the vacated slot and the right subtree reattaches
        # at the promoted subtree's first free right slot (preorder).
        l, r = self.left[node], self.right[node]
        if l != -1 and r != -1:
            promoted = l
            host = self._first_free_right(promoted)
            self.right[host] = r
            self.parent[r] = host
        elif l != -1:
            promoted = l
        else:
            promoted = r
        pp = self.parent[node]
        if pp == -1:
            if promoted == -1:
                raise DomainError("cannot detach the only node of the tree")
            self.root = promoted
            self.parent[promoted] = -1
        else:
            if self.left[pp] == node:
                self.left[pp] = promoted
            else:
                self.right[pp] = promoted
            if promoted != -1:
                self.parent[promoted] = pp
        self.parent[node] = -1
        self.left[node] = -1
        self.right[node] = -1

    def move_node(self, b, new_parent, side):
        """Detach block b and reattach it as the given child of new_parent.

        An occupant of the target slot is pushed down to b's same-side
        child slot, so the move is always legal.
        """
        if b == new_parent:
            raise DomainError("cannot move a block under itself")
        if not (0 <= b < self.n and 0 <= new_parent < self.n):
            raise DomainError(f"unknown block id in move: {b}, {new_parent}")
        nb = self.node_of[b]
        np_ = self.node_of[new_parent]
        self._detach(nb)
        if side == LEFT:
            occupant = self.left[np_]
            self.left[np_] = nb
        else:
            occupant = self.right[np_]
            self.right[np_] = nb
        self.parent[nb] = np_
        if occupant != -1:
            if side == LEFT:
                self.left[nb] = occupant
            else:
                self.right[nb] = occupant
            self.parent[occupant] = nb

    def perturb_ar(self, bid, rng):
        """Nudge a soft block's aspect ratio by a random factor.

        Returns False (a rejected no-op) for hard or preplaced blocks.
        Instance-group members receive the same new ratio, clamped to
        their own bounds.
        """
        block = self.problem.blocks[bid]
        if not block.is_soft or bid in self.problem.constraints.preplaced:
            return False
        f = rng.uniform_range(AR_STEP_LO, AR_STEP_HI)
        new_ar = min(max(self.ar[bid] * f, block.ar_min), block.ar_max)
        for m in self._inst_members.get(bid, (bid,)):
            mb = self.problem.blocks[m]
            self.set_ar(m, min(max(new_ar, mb.ar_min), mb.ar_max))
        return True


def random_tree(problem, rng):
    """Uniform random tree: random block order, each block attached to a
    uniformly random free child slot; aspect ratios start at
    clamp(1, ar_min, ar_max)."""
    n = len(problem.blocks)
    if n == 0:
        raise DomainError("cannot build a tree over zero blocks")
    tree = BStarTree(problem)
    order = list(range(n))
    rng.shuffle(order)
    tree.block_of = order
    for node, bid in enumerate(order):
        tree.node_of[bid] = node
    free_slots = [(0, LEFT), (0, RIGHT)]
    for node in range(1, n):
        k = rng.randrange(len(free_slots))
        pn, side = free_slots.pop(k)
        if side == LEFT:
            tree.left[pn] = node
        else:
            tree.right[pn] = node
        tree.parent[node] = pn
        free_slots.append((node, LEFT))
        free_slots.append((node, RIGHT))
    for b in problem.blocks:
        tree.set_ar(b.id, min(max(1.0, b.ar_min), b.ar_max))
    return tree


def pack(tree, anchored=True):
    """Pack the tree into a floorplan via preorder traversal and the contour.

    Root lands at (0, 0); a left child at parent.x + parent.width, a right
    child at parent.x; y is the contour maximum over the block's span.
    With ``anchored`` (the default), preplaced blocks ignore the tree
    position and land exactly on their constrained rectangle; either way
    they keep their constrained extent. The contour is assigned to
    y + h over the span after every placement, anchored ones included.
    """
    problem = tree.problem
    pre = problem.constraints.preplaced
    n = tree.n
    xs = [0.0] * n
    ys = [0.0] * n
    ws = [0.0] * n
    hs = [0.0] * n
    contour = Contour()
    stack = [tree.root]
    while stack:
        node = stack.pop()
        bid = tree.block_of[node]
        target = pre.get(bid)
        if target is not None:
            w, h = target[2], target[3]
        else:
            w, h = tree.w[bid], tree.h[bid]
        if target is not None and anchored:
            x, y = target[0], target[1]
        else:
            pn = tree.parent[node]
            if pn == -1:
                x = 0.0
            else:
                pb = tree.block_of[pn]
                if tree.left[pn] == node:
                    x = xs[pb] + ws[pb]
                else:
                    x = xs[pb]
            y = contour.max_height(x, x + w)
        contour.set_height(x, x + w, y + h)
        xs[bid], ys[bid], ws[bid], hs[bid] = x, y, w, h
        if tree.right[node] != -1:
            stack.append(tree.right[node])
        if tree.left[node] != -1:
            stack.append(tree.left[node])
    rects = [Rect(xs[i], ys[i], ws[i], hs[i]) for i in range(n)]
    return Floorplan(rects, problem)


def _lowest_unvisited_at(rects, unvisited, x, tol=1e-9):
    best = -1
    for bid in unvisited:
        if abs(rects[bid].x - x) <= tol:
            if best == -1 or (rects[bid].y, bid) < (rects[best].y, best):
                best = bid
    return best


def tree_from_layout(fp, tol=1e-9):
    """Rebuild a tree from a packed, overlap-free layout without anchors.

    Recursive lower-left traversal: the block at the origin is the root;
    each block adopts the lowest not-yet-visited block starting at its
    right edge as its left child, then the lowest one sharing its own x
    as its right child. The result is verified by repacking; a layout
    that cannot be reproduced (some block floats free of its supports)
    is rejected.
    """
    problem = fp.problem
    if problem.constraints.preplaced:
        raise DomainError("layout translation is defined for unconstrained layouts only")
    rects = fp.rects
    n = len(rects)
    origin = -1
    for bid in range(n):
        if abs(rects[bid].x) <= tol and abs(rects[bid].y) <= tol:
            origin = bid
            break
    if origin == -1:
        low = min(range(n), key=lambda i: (rects[i].y, rects[i].x))
        raise DomainError(
            f"no block at the origin: block {low} can move left/down")

    tree = BStarTree(problem)
    tree.parent = [-1] * n
    tree.left = [-1] * n
    tree.right = [-1] * n
    tree.block_of = [-1] * n
    tree.node_of = [-1] * n
    unvisited = set(range(n))

    def new_node(bid):
        node = n - len(unvisited)
        tree.block_of[node] = bid
        tree.node_of[bid] = node
        unvisited.discard(bid)
        return node

    tree.root = new_node(origin)
    # phase 0: adopt a left child, phase 1: adopt a right child (after the
    # whole left subtree is done, matching packing order).
    stack = [(tree.root, 1), (tree.root, 0)]
    while stack:
        node, phase = stack.pop()
        r = rects[tree.block_of[node]]
        cand = _lowest_unvisited_at(rects, unvisited, r.x + r.w if phase == 0 else r.x, tol)
        if cand == -1:
            continue
        child = new_node(cand)
        if phase == 0:
            tree.left[node] = child
        else:
            tree.right[node] = child
        tree.parent[child] = node
        stack.append((child, 1))
        stack.append((child, 0))

    if unvisited:
        stray = min(unvisited)
        raise DomainError(
            f"layout is not a packing: block {stray} can move left/down")
    for bid in range(n):
        tree.w[bid] = rects[bid].w
        tree.h[bid] = rects[bid].h
        tree.ar[bid] = rects[bid].w / rects[bid].h
    check = pack(tree)
    for bid in range(n):
        a, b = check.rects[bid], rects[bid]
        if (abs(a.x - b.x) > tol or abs(a.y - b.y) > tol
                or abs(a.w - b.w) > tol or abs(a.h - b.h) > tol):
            raise DomainError(
                f"layout is not a packing: block {bid} can move left/down")
    return tree


@dataclass
class PackStats:
    """Convenience bundle for reporting on a floorplan."""

    bbox_w: float
    bbox_h: float
    used_area: float

    @property
    def whitespace_pct(self):
        bbox = self.bbox_w * self.bbox_h
        return 100.0 * (bbox - self.used_area) / bbox if bbox > 0 else 0.0
