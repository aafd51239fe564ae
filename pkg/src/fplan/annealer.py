"""Annealing search: move set, acceptance, temperature schedule, run loop.

Two interchangeable backends execute the loop: the compiled kernel
(fplan._kernel) and the pure-Python implementation in this module. Both
consume the same splitmix64 stream and evaluate costs with identical
operation order, so a (problem, config, seed) triple yields bit-identical
records on either one. Keep them in lockstep when changing anything here.
"""

import math
import time
from dataclasses import dataclass, field, replace

from .btree import LEFT, RIGHT, pack, random_tree
from .core import CORNER_EDGES, DomainError, validate_problem
from .cost import (CASA, CLASSICAL, CostWeights, edge_satisfied,
                   bounding_box, boundary_violations, total_cost)
from .rng import Rng

CALIBRATION_SAMPLES = 200


@dataclass(frozen=True)
class AnnealConfig:
    steps: int = 10_000_000
    mode: str = CASA
    weights: CostWeights = field(default_factory=CostWeights)
    fixing_move_prob: float = 0.0005
    ar_move_prob: float = 0.333
    swap_vs_move_prob: float = 0.5
    left_vs_right_prob: float = 0.5
    cooling_ratio: float = 0.99
    moves_per_temperature: int = 1000
    initial_acceptance_target: float = 0.9
    hard_blocks: bool = False

    def __post_init__(self):
        for name in ("fixing_move_prob", "ar_move_prob", "swap_vs_move_prob",
                     "left_vs_right_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"{name} must be in [0, 1], got {p}")
        if not 0.0 < self.cooling_ratio < 1.0:
            raise DomainError(f"cooling_ratio must be in (0, 1), got {self.cooling_ratio}")
        if self.steps < 0:
            raise DomainError("steps must be non-negative")
        if self.mode not in (CASA, CLASSICAL):
            raise DomainError(f"unknown mode {self.mode!r}")
        if not 0.0 < self.initial_acceptance_target < 1.0:
            raise DomainError("initial_acceptance_target must be in (0, 1)")


@dataclass
class SolutionRecord:
    """One worker's outcome.

    floorplan/report hold the best solution found (legal preferred, then
    lowest total); final_floorplan/final_report hold the state the search
    terminated in, which is what constraint-repair statistics are read
    from. wall_time_s is measurement metadata; it is not serialized, so
    record files from identical runs compare byte-for-byte.
    """

    seed: int
    config: AnnealConfig
    floorplan: object
    report: object
    steps: int
    final_floorplan: object = None
    final_report: object = None
    wall_time_s: float = 0.0
    error: str | None = None

    @property
    def ok(self):
        return self.error is None


@dataclass
class MoveDescriptor:
    """Applied move plus the state needed to undo it exactly."""

    kind: str  # ar | swap | move | fix_swap | fix_move | noop
    snap: tuple

    def undo(self, tree):
        tree.restore(self.snap)


def accept(delta, temperature, rng):
    """Metropolis rule: always take improvements, otherwise exp(-delta/T)."""
    if temperature <= 0:
        raise DomainError("temperature must be positive")
    if delta <= 0:
        return True
    return rng.uniform() < math.exp(-delta / temperature)


def initial_temperature(mean_positive_delta, target):
    """T0 such that a mean uphill move is accepted with the target probability."""
    if not 0.0 < target < 1.0:
        raise DomainError("acceptance target must be in (0, 1)")
    return -mean_positive_delta / math.log(target)


def propose_standard_move(tree, config, rng):
    """Apply one standard move: aspect-ratio nudge, swap, or move.

    With soft blocks enabled the three kinds are roughly equally likely
    (ar_move_prob for the first, the rest split by swap_vs_move_prob).
    Degenerate problems (a single block, or no soft block in hard mode)
    fall back to whatever is applicable.
    """
    snap = tree.snapshot()
    n = tree.n
    ar_enabled = (not config.hard_blocks) and bool(tree.soft_eligible)
    if ar_enabled:
        u = rng.uniform()
        if u <= config.ar_move_prob or n < 2:
            soft = tree.soft_eligible
            bid = soft[rng.randrange(len(soft))]
            tree.perturb_ar(bid, rng)
            return MoveDescriptor("ar", snap)
    elif n < 2:
        return MoveDescriptor("noop", snap)
    b1 = rng.randrange(n)
    b2 = rng.randrange(n - 1)
    if b2 >= b1:
        b2 += 1
    if rng.uniform() <= config.swap_vs_move_prob:
        tree.swap_nodes(b1, b2)
        return MoveDescriptor("swap", snap)
    side = LEFT if rng.uniform() <= config.left_vs_right_prob else RIGHT
    tree.move_node(b1, b2, side)
    return MoveDescriptor("move", snap)


def fixing_move(tree, fp, constraints, rng):
    """Repair one boundary violation (always accepted by the caller).

    Picks a violating block and one of its violated edges; swaps with an
    unconstrained block already at that edge when one exists, otherwise
    re-parents under a block at the edge: as a right child (stacked above)
    for left/right constraints, as a left child (extending the row) for
    top/bottom ones.
    """
    bbox = bounding_box(fp)
    violators = boundary_violations(fp, constraints, bbox)
    if not violators:
        raise DomainError("fixing move requires at least one boundary violation")
    snap = tree.snapshot()
    b = violators[rng.randrange(len(violators))]
    required = constraints.boundary[b]
    edges = CORNER_EDGES.get(required, (required,))
    violated = [e for e in edges if not edge_satisfied(fp.rects[b], e, bbox)]
    edge = violated[rng.randrange(len(violated))]

    at_edge = []
    unconstrained = []
    constrained_here = []
    preplaced = constraints.preplaced
    for bid in range(tree.n):
        if bid == b or not edge_satisfied(fp.rects[bid], edge, bbox):
            continue
        at_edge.append(bid)
        required_of = constraints.boundary.get(bid)
        if required_of is None:
            if bid not in preplaced:
                unconstrained.append(bid)
        elif edge in CORNER_EDGES.get(required_of, (required_of,)):
            constrained_here.append(bid)

    if unconstrained:
        partner = unconstrained[rng.randrange(len(unconstrained))]
        tree.swap_nodes(b, partner)
        return MoveDescriptor("fix_swap", snap)
    pool = constrained_here if constrained_here else at_edge
    partner = pool[rng.randrange(len(pool))]
    tree.move_node(b, partner, RIGHT if edge in (LEFT, RIGHT) else LEFT)
    return MoveDescriptor("fix_move", snap)


def calibrate_initial_temperature(problem, tree, config, rng, target=None):
    """Sample standard moves from the given state and size T0 so the mean
    uphill cost delta is accepted with the target probability."""
    if target is None:
        target = config.initial_acceptance_target
    if not 0.0 < target < 1.0:
        raise DomainError("acceptance target must be in (0, 1)")
    anchored = config.mode == CASA
    no_overlap = not (anchored and problem.constraints.preplaced)
    base = total_cost(pack(tree, anchored), problem, config.weights, config.mode,
                      assume_no_overlap=no_overlap).total
    positive_sum = 0.0
    positive_n = 0
    for _ in range(CALIBRATION_SAMPLES):
        desc = propose_standard_move(tree, config, rng)
        cost = total_cost(pack(tree, anchored), problem, config.weights,
                          config.mode, assume_no_overlap=no_overlap).total
        desc.undo(tree)
        delta = cost - base
        if delta > 0.0:
            positive_sum += delta
            positive_n += 1
    if positive_n == 0:
        return 1.0
    return initial_temperature(positive_sum / positive_n, target)


def run(problem, config, seed, backend="auto"):
    """Execute one annealing search and return its SolutionRecord.

    backend: "native" (compiled kernel), "python", or "auto" (native when
    built, python otherwise). Both produce identical records.
    """
    issues = validate_problem(problem)
    if issues:
        raise DomainError("invalid problem:\n" + "\n".join(str(i) for i in issues))
    if backend == "auto":
        from . import native
        backend = "native" if native.AVAILABLE else "python"
    if backend == "native":
        from . import native
        return native.run_native(problem, config, seed)
    if backend == "python":
        return _run_python(problem, config, seed)
    raise DomainError(f"unknown backend {backend!r}")


def _better(report, incumbent):
    if report.legal != incumbent.legal:
        return report.legal
    return report.total < incumbent.total


def _run_python(problem, config, seed):
    started = time.perf_counter()
    rng = Rng(seed)
    tree = random_tree(problem, rng)
    anchored = config.mode == CASA
    casa = config.mode == CASA
    no_overlap = not (anchored and problem.constraints.preplaced)
    weights = config.weights

    def evaluate(fp):
        return total_cost(fp, problem, weights, config.mode,
                          assume_no_overlap=no_overlap)

    cur_fp = pack(tree, anchored)
    cur = evaluate(cur_fp)
    temperature = calibrate_initial_temperature(problem, tree, config, rng)
    best_fp, best = cur_fp, cur

    constraints = problem.constraints
    for step in range(config.steps):
        fixed = False
        if casa and constraints.boundary:
            if rng.uniform() <= config.fixing_move_prob and cur.violating_block_ids:
                fixing_move(tree, cur_fp, constraints, rng)
                cur_fp = pack(tree, anchored)
                cur = evaluate(cur_fp)
                fixed = True
        if not fixed:
            desc = propose_standard_move(tree, config, rng)
            new_fp = pack(tree, anchored)
            new = evaluate(new_fp)
            if accept(new.total - cur.total, temperature, rng):
                cur_fp, cur = new_fp, new
            else:
                desc.undo(tree)
        if _better(cur, best):
            best_fp, best = cur_fp, cur
        if (step + 1) % config.moves_per_temperature == 0:
            temperature *= config.cooling_ratio

    return SolutionRecord(
        seed=seed,
        config=config,
        floorplan=best_fp,
        report=best,
        steps=config.steps,
        final_floorplan=cur_fp,
        final_report=cur,
        wall_time_s=time.perf_counter() - started,
    )
