"""Bridge to the compiled annealing kernel.

Flattens a Problem into the arrays fplan._kernel.run_loop consumes and
wraps the result back into a SolutionRecord. Falls back is handled by the
caller: AVAILABLE is False when the extension was not built, and
annealer.run then uses the pure-Python loop.
"""

import time

import numpy as np

from .annealer import SolutionRecord
from .core import Floorplan, Rect
from .cost import CASA, CostReport

try:
    from . import _kernel
    AVAILABLE = True
except ImportError:  # extension not built; pure-Python backend only
    _kernel = None
    AVAILABLE = False

_EDGE_X = {"left": 1, "right": 2}
_EDGE_Y = {"bottom": 1, "top": 2}
_CORNER_XY = {"bl": ("left", "bottom"), "br": ("right", "bottom"),
              "tl": ("left", "top"), "tr": ("right", "top")}


def _boundary_codes(problem):
    n = len(problem.blocks)
    bc_x = np.zeros(n, dtype=np.int32)
    bc_y = np.zeros(n, dtype=np.int32)
    for bid, side in problem.constraints.boundary.items():
        if side in _CORNER_XY:
            ex, ey = _CORNER_XY[side]
            bc_x[bid] = _EDGE_X[ex]
            bc_y[bid] = _EDGE_Y[ey]
        elif side in _EDGE_X:
            bc_x[bid] = _EDGE_X[side]
        else:
            bc_y[bid] = _EDGE_Y[side]
    return bc_x, bc_y


def _csr(groups, dtype=np.int32):
    ptr = np.zeros(len(groups) + 1, dtype=dtype)
    members = []
    for i, g in enumerate(groups):
        members.extend(sorted(g))
        ptr[i + 1] = len(members)
    return ptr, np.asarray(members, dtype=dtype)


def marshal_problem(problem):
    """Flatten a validated Problem into kernel arrays."""
    n = len(problem.blocks)
    area = np.array([b.area for b in problem.blocks], dtype=np.float64)
    armin = np.array([b.ar_min for b in problem.blocks], dtype=np.float64)
    armax = np.array([b.ar_max for b in problem.blocks], dtype=np.float64)

    pre = problem.constraints.preplaced
    pre_flag = np.zeros(n, dtype=np.uint8)
    pre_x = np.zeros(n, dtype=np.float64)
    pre_y = np.zeros(n, dtype=np.float64)
    pre_w = np.zeros(n, dtype=np.float64)
    pre_h = np.zeros(n, dtype=np.float64)
    for bid, (x, y, w, h) in pre.items():
        pre_flag[bid] = 1
        pre_x[bid], pre_y[bid], pre_w[bid], pre_h[bid] = x, y, w, h

    soft_ids = np.array([b.id for b in problem.blocks
                         if b.is_soft and b.id not in pre], dtype=np.int32)
    bc_x, bc_y = _boundary_codes(problem)

    ig_id = np.full(n, -1, dtype=np.int32)
    for gi, g in enumerate(problem.constraints.instance_groups):
        for bid in g:
            ig_id[bid] = gi
    ig_ptr, ig_members = _csr(problem.constraints.instance_groups)
    g_ptr, g_members = _csr(problem.constraints.groups)

    net_ptr = np.zeros(len(problem.nets) + 1, dtype=np.int32)
    ep_bid, ep_x, ep_y = [], [], []
    for i, net in enumerate(problem.nets):
        for bid in sorted(net.block_endpoints):
            ep_bid.append(bid)
            ep_x.append(0.0)
            ep_y.append(0.0)
        for tid in sorted(net.terminal_endpoints):
            t = problem.terminals[tid]
            ep_bid.append(-1)
            ep_x.append(t.x)
            ep_y.append(t.y)
        net_ptr[i + 1] = len(ep_bid)

    return {
        "n": n,
        "n_nets": len(problem.nets),
        "n_groups": len(problem.constraints.groups),
        "area": area, "armin": armin, "armax": armax,
        "soft_ids": soft_ids,
        "pre_flag": pre_flag, "pre_x": pre_x, "pre_y": pre_y,
        "pre_w": pre_w, "pre_h": pre_h,
        "bc_x": bc_x, "bc_y": bc_y,
        "ig_id": ig_id, "ig_ptr": ig_ptr, "ig_members": ig_members,
        "g_ptr": g_ptr, "g_members": g_members,
        "net_ptr": net_ptr,
        "ep_bid": np.asarray(ep_bid, dtype=np.int32),
        "ep_x": np.asarray(ep_x, dtype=np.float64),
        "ep_y": np.asarray(ep_y, dtype=np.float64),
        "has_outline": int(problem.outline is not None),
        "outline_w": problem.outline[0] if problem.outline else 0.0,
        "outline_h": problem.outline[1] if problem.outline else 0.0,
    }


def run_native(problem, config, seed):
    if not AVAILABLE:
        raise RuntimeError("the compiled kernel is not available; "
                           "reinstall with the extension built or use "
                           "backend='python'")
    started = time.perf_counter()
    m = marshal_problem(problem)
    n = m["n"]
    out_x = np.zeros(n, dtype=np.float64)
    out_y = np.zeros(n, dtype=np.float64)
    out_w = np.zeros(n, dtype=np.float64)
    out_h = np.zeros(n, dtype=np.float64)
    out_viol = np.zeros(n, dtype=np.int32)
    out_clusters = np.zeros(m["n_groups"], dtype=np.int32)
    fin_x = np.zeros(n, dtype=np.float64)
    fin_y = np.zeros(n, dtype=np.float64)
    fin_w = np.zeros(n, dtype=np.float64)
    fin_h = np.zeros(n, dtype=np.float64)
    fin_viol = np.zeros(n, dtype=np.int32)
    fin_clusters = np.zeros(m["n_groups"], dtype=np.int32)
    w = config.weights
    best_rep, final_rep = _kernel.run_loop(
        m["n"], m["n_nets"], m["n_groups"],
        m["area"], m["armin"], m["armax"],
        m["soft_ids"],
        m["pre_flag"], m["pre_x"], m["pre_y"], m["pre_w"], m["pre_h"],
        m["bc_x"], m["bc_y"],
        m["ig_id"], m["ig_ptr"], m["ig_members"],
        m["g_ptr"], m["g_members"],
        m["net_ptr"], m["ep_bid"], m["ep_x"], m["ep_y"],
        m["has_outline"], m["outline_w"], m["outline_h"],
        config.steps, 0 if config.mode == CASA else 1,
        int(config.hard_blocks),
        w.alpha, w.beta, w.gamma, w.eta, w.zeta, w.theta, w.mu,
        config.fixing_move_prob, config.ar_move_prob,
        config.swap_vs_move_prob, config.left_vs_right_prob,
        config.cooling_ratio, config.moves_per_temperature,
        config.initial_acceptance_target,
        seed & 0xFFFFFFFFFFFFFFFF,
        out_x, out_y, out_w, out_h, out_viol, out_clusters,
        fin_x, fin_y, fin_w, fin_h, fin_viol, fin_clusters,
    )

    def build(rep, xs, ys, ws, hs, viol, clusters):
        rects = [Rect(float(xs[i]), float(ys[i]), float(ws[i]), float(hs[i]))
                 for i in range(n)]
        report = CostReport(
            hpwl=rep["hpwl"],
            bbox_area=rep["bbox_area"],
            outline_cost=rep["outline_cost"],
            grouping_cost=rep["grouping_cost"],
            boundary_violation_count=rep["boundary_violation_count"],
            preplaced_deviation=rep["preplaced_deviation"],
            overlap_area=rep["overlap_area"],
            total=rep["total"],
            legal=rep["legal"],
            violating_block_ids=[int(v) for v in
                                 viol[:rep["boundary_violation_count"]]],
            outline_overflow=rep["outline_overflow"],
            group_clusters=[int(z) for z in clusters],
        )
        return Floorplan(rects, problem), report

    best_fp, best_report = build(best_rep, out_x, out_y, out_w, out_h,
                                 out_viol, out_clusters)
    final_fp, final_report = build(final_rep, fin_x, fin_y, fin_w, fin_h,
                                   fin_viol, fin_clusters)
    return SolutionRecord(
        seed=seed,
        config=config,
        floorplan=best_fp,
        report=best_report,
        steps=config.steps,
        final_floorplan=final_fp,
        final_report=final_report,
        wall_time_s=time.perf_counter() - started,
    )
