# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled annealing loop: bit-identical twin of fplan.annealer._run_python.

Everything that touches floats mirrors the Python implementation's
operation order exactly (same expressions, same reduction order, same
splitmix64 stream), so a (problem, config, seed) triple produces the same
record on either backend. Compiled with -ffp-contract=off to keep it that
way. When changing the Python side, change this file in lockstep.
"""

from libc.math cimport INFINITY, exp, fabs, log, sqrt
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

cdef extern from *:
    ctypedef unsigned long long u128 "__uint128_t"

ctypedef unsigned long long u64

cdef double TOL = 1e-9
cdef double AR_LO = 1.0 / 1.2
cdef double AR_HI = 1.2
cdef double INV_2_53 = 1.0 / 9007199254740992.0
cdef int CAL_SAMPLES = 200

cdef int MODE_CASA = 0
cdef int MODE_CLASSICAL = 1

cdef int SIDE_LEFT = 0
cdef int SIDE_RIGHT = 1
cdef int EDGE_NONE = 0
cdef int EDGE_L = 1     # bc_x codes: left / right
cdef int EDGE_R = 2
cdef int EDGE_B = 1     # bc_y codes: bottom / top
cdef int EDGE_T = 2


# -- rng (splitmix64, mirrors fplan.rng.Rng) --------------------------------

cdef inline u64 rng_next(u64 *state) noexcept nogil:
    state[0] = state[0] + <u64>0x9E3779B97F4A7C15
    cdef u64 z = state[0]
    z = (z ^ (z >> 30)) * <u64>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <u64>0x94D049BB133111EB
    return z ^ (z >> 31)

cdef inline double rng_uniform(u64 *state) noexcept nogil:
    return <double>(rng_next(state) >> 11) * INV_2_53

cdef inline long rng_randrange(u64 *state, long n) noexcept nogil:
    return <long>((<u128>rng_next(state) * <u128>(<u64>n)) >> 64)


cdef struct Report:
    double hpwl
    double bbox_area
    double ocost
    double gcost
    double predev
    double overlap
    double over
    double total
    int bv_count
    int unsat
    int legal


cdef struct Ctx:
    int n
    int n_nets
    int n_groups
    int mode
    int anchored
    int no_overlap
    int has_outline
    int has_boundary
    int has_preplaced
    int ar_enabled
    int n_soft
    double outline_w
    double outline_h
    double alpha, beta, gamma, eta, zeta, theta, mu
    # problem arrays (borrowed)
    double *area
    double *armin
    double *armax
    int *soft_ids
    unsigned char *pre_flag
    double *pre_x
    double *pre_y
    double *pre_w
    double *pre_h
    int *bc_x
    int *bc_y
    int *ig_id
    int *ig_ptr
    int *ig_members
    int *g_ptr
    int *g_members
    int *net_ptr
    int *ep_bid
    double *ep_x
    double *ep_y
    # tree state
    int *parent
    int *left
    int *right
    int *block_of
    int *node_of
    int root
    double *ar
    double *tw
    double *th
    # snapshot for undo
    int *s_parent
    int *s_left
    int *s_right
    int *s_block_of
    int *s_node_of
    int s_root
    double *s_ar
    double *s_tw
    double *s_th
    # contour
    double *cx
    double *ch
    int cn
    double *tmp_cx
    double *tmp_ch
    # traversal stack, free-slot scratch
    int *stack
    int *fs_node
    int *fs_side
    # placements
    double *cur_x
    double *cur_y
    double *cur_w
    double *cur_h
    double *new_x
    double *new_y
    double *new_w
    double *new_h
    double *best_x
    double *best_y
    double *best_w
    double *best_h
    # violator / cluster buffers
    int *cur_viol
    int *new_viol
    int *best_viol
    int *cur_cl
    int *new_cl
    int *best_cl
    # scratch for fixing moves and union-find
    int *viol_buf
    int *at_edge
    int *unconstrained
    int *constrained_here
    int *uf


# -- contour (mirrors fplan.btree.Contour) ----------------------------------

cdef inline void contour_reset(Ctx *c) noexcept nogil:
    c.cx[0] = -INFINITY
    c.ch[0] = 0.0
    c.cn = 1

cdef double contour_max(Ctx *c, double x0, double x1) noexcept nogil:
    cdef double best = 0.0
    cdef double end
    cdef int i
    for i in range(c.cn):
        if c.cx[i] >= x1:
            break
        end = c.cx[i + 1] if i + 1 < c.cn else INFINITY
        if end <= x0:
            continue
        if c.ch[i] > best:
            best = c.ch[i]
    return best

cdef void contour_set(Ctx *c, double x0, double x1, double h) noexcept nogil:
    cdef double tail = c.ch[0]
    cdef int i, m, k
    for i in range(c.cn):
        if c.cx[i] <= x1:
            tail = c.ch[i]
        else:
            break
    m = 0
    for i in range(c.cn):
        if c.cx[i] < x0:
            c.tmp_cx[m] = c.cx[i]
            c.tmp_ch[m] = c.ch[i]
            m += 1
    c.tmp_cx[m] = x0
    c.tmp_ch[m] = h
    m += 1
    c.tmp_cx[m] = x1
    c.tmp_ch[m] = tail
    m += 1
    for i in range(c.cn):
        if c.cx[i] > x1:
            c.tmp_cx[m] = c.cx[i]
            c.tmp_ch[m] = c.ch[i]
            m += 1
    # merge adjacent equal heights
    c.cx[0] = c.tmp_cx[0]
    c.ch[0] = c.tmp_ch[0]
    k = 1
    for i in range(1, m):
        if c.tmp_ch[i] != c.ch[k - 1]:
            c.cx[k] = c.tmp_cx[i]
            c.ch[k] = c.tmp_ch[i]
            k += 1
    c.cn = k


# -- tree ops (mirror fplan.btree.BStarTree) --------------------------------

cdef inline void tree_snapshot(Ctx *c) noexcept nogil:
    cdef size_t ni = c.n * sizeof(int)
    cdef size_t nd = c.n * sizeof(double)
    memcpy(c.s_parent, c.parent, ni)
    memcpy(c.s_left, c.left, ni)
    memcpy(c.s_right, c.right, ni)
    memcpy(c.s_block_of, c.block_of, ni)
    memcpy(c.s_node_of, c.node_of, ni)
    memcpy(c.s_ar, c.ar, nd)
    memcpy(c.s_tw, c.tw, nd)
    memcpy(c.s_th, c.th, nd)
    c.s_root = c.root

cdef inline void tree_restore(Ctx *c) noexcept nogil:
    cdef size_t ni = c.n * sizeof(int)
    cdef size_t nd = c.n * sizeof(double)
    memcpy(c.parent, c.s_parent, ni)
    memcpy(c.left, c.s_left, ni)
    memcpy(c.right, c.s_right, ni)
    memcpy(c.block_of, c.s_block_of, ni)
    memcpy(c.node_of, c.s_node_of, ni)
    memcpy(c.ar, c.s_ar, nd)
    memcpy(c.tw, c.s_tw, nd)
    memcpy(c.th, c.s_th, nd)
    c.root = c.s_root

cdef inline double clamp(double v, double lo, double hi) noexcept nogil:
    # matches python min(max(v, lo), hi)
    if v < lo:
        v = lo
    if v > hi:
        v = hi
    return v

cdef inline void set_ar(Ctx *c, int bid, double v) noexcept nogil:
    c.ar[bid] = v
    c.tw[bid] = sqrt(c.area[bid] * v)
    c.th[bid] = sqrt(c.area[bid] / v)

cdef void tree_swap(Ctx *c, int a, int b) noexcept nogil:
    cdef int na = c.node_of[a]
    cdef int nb = c.node_of[b]
    c.block_of[na] = b
    c.block_of[nb] = a
    c.node_of[a] = nb
    c.node_of[b] = na

cdef int first_free_right(Ctx *c, int start) noexcept nogil:
    cdef int sp = 0
    cdef int node
    c.stack[sp] = start
    sp += 1
    while sp > 0:
        sp -= 1
        node = c.stack[sp]
        if c.right[node] == -1:
            return node
        c.stack[sp] = c.right[node]
        sp += 1
        if c.left[node] != -1:
            c.stack[sp] = c.left[node]
            sp += 1
    return start  # unreachable: every finite subtree has a free right slot

cdef void tree_detach(Ctx *c, int node) noexcept nogil:
    cdef int l = c.left[node]
    cdef int r = c.right[node]
    cdef int promoted, host, pp
    if l != -1 and r != -1:
        promoted = l
        host = first_free_right(c, promoted)
        c.right[host] = r
        c.parent[r] = host
    elif l != -1:
        promoted = l
    else:
        promoted = r
    pp = c.parent[node]
    if pp == -1:
        c.root = promoted
        if promoted != -1:
            c.parent[promoted] = -1
    else:
        if c.left[pp] == node:
            c.left[pp] = promoted
        else:
            c.right[pp] = promoted
        if promoted != -1:
            c.parent[promoted] = pp
    c.parent[node] = -1
    c.left[node] = -1
    c.right[node] = -1

cdef void tree_move(Ctx *c, int b, int new_parent, int side) noexcept nogil:
    cdef int nb = c.node_of[b]
    cdef int np_ = c.node_of[new_parent]
    cdef int occupant
    tree_detach(c, nb)
    if side == SIDE_LEFT:
        occupant = c.left[np_]
        c.left[np_] = nb
    else:
        occupant = c.right[np_]
        c.right[np_] = nb
    c.parent[nb] = np_
    if occupant != -1:
        if side == SIDE_LEFT:
            c.left[nb] = occupant
        else:
            c.right[nb] = occupant
        c.parent[occupant] = nb

cdef void perturb_ar(Ctx *c, int bid, u64 *rng) noexcept nogil:
    cdef double f = AR_LO + (AR_HI - AR_LO) * rng_uniform(rng)
    cdef double new_ar = clamp(c.ar[bid] * f, c.armin[bid], c.armax[bid])
    cdef int g = c.ig_id[bid]
    cdef int i, m
    if g >= 0:
        for i in range(c.ig_ptr[g], c.ig_ptr[g + 1]):
            m = c.ig_members[i]
            set_ar(c, m, clamp(new_ar, c.armin[m], c.armax[m]))
    else:
        set_ar(c, bid, new_ar)


cdef void random_tree(Ctx *c, u64 *rng) noexcept nogil:
    cdef int n = c.n
    cdef int i, j, k, node, pn, side, tmp
    cdef int *order = c.s_block_of  # scratch during init only
    for i in range(n):
        order[i] = i
        c.parent[i] = -1
        c.left[i] = -1
        c.right[i] = -1
    for i in range(n - 1, 0, -1):
        j = <int>rng_randrange(rng, i + 1)
        tmp = order[i]
        order[i] = order[j]
        order[j] = tmp
    for i in range(n):
        c.block_of[i] = order[i]
        c.node_of[order[i]] = i
    c.root = 0
    cdef int fs_n = 2
    c.fs_node[0] = 0
    c.fs_side[0] = SIDE_LEFT
    c.fs_node[1] = 0
    c.fs_side[1] = SIDE_RIGHT
    for node in range(1, n):
        k = <int>rng_randrange(rng, fs_n)
        pn = c.fs_node[k]
        side = c.fs_side[k]
        for i in range(k, fs_n - 1):
            c.fs_node[i] = c.fs_node[i + 1]
            c.fs_side[i] = c.fs_side[i + 1]
        fs_n -= 1
        if side == SIDE_LEFT:
            c.left[pn] = node
        else:
            c.right[pn] = node
        c.parent[node] = pn
        c.fs_node[fs_n] = node
        c.fs_side[fs_n] = SIDE_LEFT
        fs_n += 1
        c.fs_node[fs_n] = node
        c.fs_side[fs_n] = SIDE_RIGHT
        fs_n += 1
    for i in range(n):
        set_ar(c, i, clamp(1.0, c.armin[i], c.armax[i]))


# -- packing ----------------------------------------------------------------

cdef void pack(Ctx *c, double *px, double *py, double *pw, double *ph) noexcept nogil:
    cdef int sp = 0
    cdef int node, bid, pn, pb
    cdef double x, y, w, h
    contour_reset(c)
    c.stack[sp] = c.root
    sp += 1
    while sp > 0:
        sp -= 1
        node = c.stack[sp]
        bid = c.block_of[node]
        if c.pre_flag[bid]:
            w = c.pre_w[bid]
            h = c.pre_h[bid]
        else:
            w = c.tw[bid]
            h = c.th[bid]
        if c.pre_flag[bid] and c.anchored:
            x = c.pre_x[bid]
            y = c.pre_y[bid]
        else:
            pn = c.parent[node]
            if pn == -1:
                x = 0.0
            else:
                pb = c.block_of[pn]
                if c.left[pn] == node:
                    x = px[pb] + pw[pb]
                else:
                    x = px[pb]
            y = contour_max(c, x, x + w)
        contour_set(c, x, x + w, y + h)
        px[bid] = x
        py[bid] = y
        pw[bid] = w
        ph[bid] = h
        if c.right[node] != -1:
            c.stack[sp] = c.right[node]
            sp += 1
        if c.left[node] != -1:
            c.stack[sp] = c.left[node]
            sp += 1


# -- evaluation (mirrors fplan.cost.total_cost) ------------------------------

cdef inline int uf_find(int *parent, int i) noexcept nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i

cdef inline int edge_ok_x(int code, double x, double w,
                          double bx, double bw) noexcept nogil:
    if code == EDGE_L:
        return fabs(x - bx) <= TOL
    return fabs((x + w) - (bx + bw)) <= TOL

cdef inline int edge_ok_y(int code, double y, double h,
                          double by, double bh) noexcept nogil:
    if code == EDGE_B:
        return fabs(y - by) <= TOL
    return fabs((y + h) - (by + bh)) <= TOL

cdef void evaluate(Ctx *c, double *px, double *py, double *pw, double *ph,
                   Report *rep, int *viol, int *clusters) noexcept nogil:
    cdef int i, j, g, z, bid, ri, rj, members0, gsize, first, ok
    cdef double cxp, cyp, min_x, max_x, min_y, max_y
    cdef double total, wire, dx, dy

    # hpwl
    wire = 0.0
    for i in range(c.n_nets):
        first = 1
        min_x = max_x = min_y = max_y = 0.0
        for j in range(c.net_ptr[i], c.net_ptr[i + 1]):
            bid = c.ep_bid[j]
            if bid >= 0:
                cxp = px[bid] + 0.5 * pw[bid]
                cyp = py[bid] + 0.5 * ph[bid]
            else:
                cxp = c.ep_x[j]
                cyp = c.ep_y[j]
            if first:
                min_x = max_x = cxp
                min_y = max_y = cyp
                first = 0
            else:
                if cxp < min_x:
                    min_x = cxp
                if cxp > max_x:
                    max_x = cxp
                if cyp < min_y:
                    min_y = cyp
                if cyp > max_y:
                    max_y = cyp
        if not first:
            wire += (max_x - min_x) + (max_y - min_y)
    rep.hpwl = wire

    # bounding box
    cdef double bx = INFINITY, by = INFINITY
    cdef double bx2 = -INFINITY, by2 = -INFINITY
    for i in range(c.n):
        if px[i] < bx:
            bx = px[i]
        if py[i] < by:
            by = py[i]
        if px[i] + pw[i] > bx2:
            bx2 = px[i] + pw[i]
        if py[i] + ph[i] > by2:
            by2 = py[i] + ph[i]
    cdef double bw = bx2 - bx
    cdef double bh = by2 - by
    rep.bbox_area = bw * bh

    # outline
    rep.over = 0.0
    rep.ocost = 0.0
    cdef double over_w, over_h
    if c.has_outline:
        over_w = bw - c.outline_w
        over_h = bh - c.outline_h
        rep.over = (over_w if over_w > 0.0 else 0.0) + (over_h if over_h > 0.0 else 0.0)
        rep.ocost = c.eta * rep.over

    # grouping clusters
    cdef double gsum = 0.0
    rep.unsat = 0
    for g in range(c.n_groups):
        members0 = c.g_ptr[g]
        gsize = c.g_ptr[g + 1] - members0
        for i in range(gsize):
            c.uf[i] = i
        for i in range(gsize):
            for j in range(i + 1, gsize):
                ri = c.g_members[members0 + i]
                rj = c.g_members[members0 + j]
                dx = (px[ri] + pw[ri] if px[ri] + pw[ri] < px[rj] + pw[rj] else px[rj] + pw[rj]) \
                    - (px[ri] if px[ri] > px[rj] else px[rj])
                dy = (py[ri] + ph[ri] if py[ri] + ph[ri] < py[rj] + ph[rj] else py[rj] + ph[rj]) \
                    - (py[ri] if py[ri] > py[rj] else py[rj])
                if dx < -TOL or dy < -TOL:
                    continue
                if dx > TOL or dy > TOL:
                    ri = uf_find(c.uf, i)
                    rj = uf_find(c.uf, j)
                    if ri != rj:
                        c.uf[rj] = ri
        z = 0
        for i in range(gsize):
            if uf_find(c.uf, i) == i:
                z += 1
        clusters[g] = z
        gsum += (<double>(z - 1)) / <double>gsize
        if z > 1:
            rep.unsat += 1
    rep.gcost = c.zeta * gsum

    # boundary violations (ascending block id)
    rep.bv_count = 0
    if c.has_boundary:
        for i in range(c.n):
            if c.bc_x[i] == EDGE_NONE and c.bc_y[i] == EDGE_NONE:
                continue
            ok = 1
            if c.bc_x[i] != EDGE_NONE:
                ok = edge_ok_x(c.bc_x[i], px[i], pw[i], bx, bw)
            if ok and c.bc_y[i] != EDGE_NONE:
                ok = edge_ok_y(c.bc_y[i], py[i], ph[i], by, bh)
            if not ok:
                viol[rep.bv_count] = i
                rep.bv_count += 1

    # preplacement deviation (ascending block id)
    rep.predev = 0.0
    if c.has_preplaced:
        for i in range(c.n):
            if c.pre_flag[i]:
                rep.predev += fabs(px[i] - c.pre_x[i]) + fabs(py[i] - c.pre_y[i])

    # pairwise overlap
    rep.overlap = 0.0
    if not c.no_overlap:
        for i in range(c.n):
            for j in range(i + 1, c.n):
                dx = (px[i] + pw[i] if px[i] + pw[i] < px[j] + pw[j] else px[j] + pw[j]) \
                    - (px[i] if px[i] > px[j] else px[j])
                if dx <= 0.0:
                    continue
                dy = (py[i] + ph[i] if py[i] + ph[i] < py[j] + ph[j] else py[j] + ph[j]) \
                    - (py[i] if py[i] > py[j] else py[j])
                if dy <= 0.0:
                    continue
                rep.overlap += dx * dy

    total = c.alpha * wire + c.beta * rep.bbox_area + rep.ocost + rep.gcost \
        + c.mu * rep.overlap
    if c.mode == MODE_CLASSICAL:
        total += c.gamma * (rep.bv_count + rep.unsat) + c.theta * rep.predev
    rep.total = total

    rep.legal = (rep.bv_count == 0 and rep.unsat == 0
                 and rep.overlap <= TOL and rep.predev <= TOL
                 and (not c.has_outline
                      or (bw - c.outline_w <= TOL and bh - c.outline_h <= TOL)))


# -- moves -------------------------------------------------------------------

cdef int propose_standard(Ctx *c, u64 *rng, double ar_prob, double swap_prob,
                          double left_prob) noexcept nogil:
    """Apply one standard move after snapshotting; 0 ar, 1 swap, 2 move, 3 noop."""
    tree_snapshot(c)
    cdef int n = c.n
    cdef int b1, b2, side
    cdef double u
    if c.ar_enabled:
        u = rng_uniform(rng)
        if u <= ar_prob or n < 2:
            b1 = c.soft_ids[rng_randrange(rng, c.n_soft)]
            perturb_ar(c, b1, rng)
            return 0
    elif n < 2:
        return 3
    b1 = <int>rng_randrange(rng, n)
    b2 = <int>rng_randrange(rng, n - 1)
    if b2 >= b1:
        b2 += 1
    if rng_uniform(rng) <= swap_prob:
        tree_swap(c, b1, b2)
        return 1
    side = SIDE_LEFT if rng_uniform(rng) <= left_prob else SIDE_RIGHT
    tree_move(c, b1, b2, side)
    return 2


cdef void fixing_move(Ctx *c, u64 *rng, double *px, double *py,
                      double *pw, double *ph) noexcept nogil:
    """Mirror of fplan.annealer.fixing_move over the current placement."""
    cdef int i, b, n_viol, ok, n_edges, pick
    cdef int e_isx[2]
    cdef int e_code[2]
    cdef int edge_is_x, edge_code
    cdef int n_at, n_unc, n_conh, partner, required_here
    cdef double bx = INFINITY, by = INFINITY
    cdef double bx2 = -INFINITY, by2 = -INFINITY
    for i in range(c.n):
        if px[i] < bx:
            bx = px[i]
        if py[i] < by:
            by = py[i]
        if px[i] + pw[i] > bx2:
            bx2 = px[i] + pw[i]
        if py[i] + ph[i] > by2:
            by2 = py[i] + ph[i]
    cdef double bw = bx2 - bx
    cdef double bh = by2 - by

    n_viol = 0
    for i in range(c.n):
        if c.bc_x[i] == EDGE_NONE and c.bc_y[i] == EDGE_NONE:
            continue
        ok = 1
        if c.bc_x[i] != EDGE_NONE:
            ok = edge_ok_x(c.bc_x[i], px[i], pw[i], bx, bw)
        if ok and c.bc_y[i] != EDGE_NONE:
            ok = edge_ok_y(c.bc_y[i], py[i], ph[i], by, bh)
        if not ok:
            c.viol_buf[n_viol] = i
            n_viol += 1
    # caller guarantees n_viol > 0
    b = c.viol_buf[rng_randrange(rng, n_viol)]

    # violated edges of b, x-edge before y-edge (matches the corner tables)
    n_edges = 0
    if c.bc_x[b] != EDGE_NONE and not edge_ok_x(c.bc_x[b], px[b], pw[b], bx, bw):
        e_isx[n_edges] = 1
        e_code[n_edges] = c.bc_x[b]
        n_edges += 1
    if c.bc_y[b] != EDGE_NONE and not edge_ok_y(c.bc_y[b], py[b], ph[b], by, bh):
        e_isx[n_edges] = 0
        e_code[n_edges] = c.bc_y[b]
        n_edges += 1
    pick = <int>rng_randrange(rng, n_edges)
    edge_is_x = e_isx[pick]
    edge_code = e_code[pick]

    n_at = 0
    n_unc = 0
    n_conh = 0
    for i in range(c.n):
        if i == b:
            continue
        if edge_is_x:
            ok = edge_ok_x(edge_code, px[i], pw[i], bx, bw)
        else:
            ok = edge_ok_y(edge_code, py[i], ph[i], by, bh)
        if not ok:
            continue
        c.at_edge[n_at] = i
        n_at += 1
        if c.bc_x[i] == EDGE_NONE and c.bc_y[i] == EDGE_NONE:
            if not c.pre_flag[i]:
                c.unconstrained[n_unc] = i
                n_unc += 1
        else:
            required_here = (c.bc_x[i] == edge_code) if edge_is_x else (c.bc_y[i] == edge_code)
            if required_here:
                c.constrained_here[n_conh] = i
                n_conh += 1

    if n_unc > 0:
        partner = c.unconstrained[rng_randrange(rng, n_unc)]
        tree_swap(c, b, partner)
        return
    if n_conh > 0:
        partner = c.constrained_here[rng_randrange(rng, n_conh)]
    else:
        partner = c.at_edge[rng_randrange(rng, n_at)]
    tree_move(c, b, partner, SIDE_RIGHT if edge_is_x else SIDE_LEFT)


# -- driver -------------------------------------------------------------------

def run_loop(int n, int n_nets, int n_groups,
             double[::1] area, double[::1] armin, double[::1] armax,
             int[::1] soft_ids,
             unsigned char[::1] pre_flag,
             double[::1] pre_x, double[::1] pre_y,
             double[::1] pre_w, double[::1] pre_h,
             int[::1] bc_x, int[::1] bc_y,
             int[::1] ig_id, int[::1] ig_ptr, int[::1] ig_members,
             int[::1] g_ptr, int[::1] g_members,
             int[::1] net_ptr, int[::1] ep_bid,
             double[::1] ep_x, double[::1] ep_y,
             int has_outline, double outline_w, double outline_h,
             long long steps, int mode, int hard_blocks,
             double alpha, double beta, double gamma, double eta,
             double zeta, double theta, double mu,
             double fixing_move_prob, double ar_move_prob,
             double swap_vs_move_prob, double left_vs_right_prob,
             double cooling_ratio, long long moves_per_temperature,
             double acceptance_target,
             unsigned long long seed,
             double[::1] out_x, double[::1] out_y,
             double[::1] out_w, double[::1] out_h,
             int[::1] out_viol, int[::1] out_clusters,
             double[::1] fin_x, double[::1] fin_y,
             double[::1] fin_w, double[::1] fin_h,
             int[::1] fin_viol, int[::1] fin_clusters):
    """Run the annealing loop; fill out_* with the best floorplan, fin_*
    with the final state, and return (best report, final report) dicts."""
    cdef Ctx c
    cdef u64 rng = seed
    cdef Report cur, cand, best
    cdef long long step
    cdef int i, fixed
    cdef double temperature, delta, u
    cdef double positive_sum
    cdef int positive_n
    cdef int cap = 2 * n + 16

    c.n = n
    c.n_nets = n_nets
    c.n_groups = n_groups
    c.mode = mode
    c.anchored = 1 if mode == MODE_CASA else 0
    c.has_outline = has_outline
    c.outline_w = outline_w
    c.outline_h = outline_h
    c.alpha = alpha
    c.beta = beta
    c.gamma = gamma
    c.eta = eta
    c.zeta = zeta
    c.theta = theta
    c.mu = mu
    c.n_soft = <int>soft_ids.shape[0]
    c.ar_enabled = 1 if (not hard_blocks and c.n_soft > 0) else 0
    c.area = &area[0]
    c.armin = &armin[0]
    c.armax = &armax[0]
    c.soft_ids = &soft_ids[0] if c.n_soft > 0 else NULL
    c.pre_flag = &pre_flag[0]
    c.pre_x = &pre_x[0]
    c.pre_y = &pre_y[0]
    c.pre_w = &pre_w[0]
    c.pre_h = &pre_h[0]
    c.bc_x = &bc_x[0]
    c.bc_y = &bc_y[0]
    c.ig_id = &ig_id[0]
    c.ig_ptr = &ig_ptr[0]
    c.ig_members = &ig_members[0] if ig_members.shape[0] > 0 else NULL
    c.g_ptr = &g_ptr[0]
    c.g_members = &g_members[0] if g_members.shape[0] > 0 else NULL
    c.net_ptr = &net_ptr[0]
    c.ep_bid = &ep_bid[0] if ep_bid.shape[0] > 0 else NULL
    c.ep_x = &ep_x[0] if ep_x.shape[0] > 0 else NULL
    c.ep_y = &ep_y[0] if ep_y.shape[0] > 0 else NULL
    c.has_preplaced = 0
    for i in range(n):
        if pre_flag[i]:
            c.has_preplaced = 1
            break
    c.has_boundary = 0
    for i in range(n):
        if bc_x[i] != EDGE_NONE or bc_y[i] != EDGE_NONE:
            c.has_boundary = 1
            break
    c.no_overlap = 0 if (c.anchored and c.has_preplaced) else 1

    # one arena: doubles first (alignment), then ints
    cdef size_t nd = n * sizeof(double)
    cdef size_t ni = n * sizeof(int)
    cdef size_t ng_i = n_groups * sizeof(int)
    cdef size_t dbl_bytes = 14 * nd + 4 * cap * sizeof(double)
    cdef size_t int_bytes = 18 * ni + (n + 4) * sizeof(int) \
        + 2 * (n + 2) * sizeof(int) + 3 * ng_i
    cdef char *blob = <char *>malloc(dbl_bytes + int_bytes)
    if blob == NULL:
        raise MemoryError()
    cdef char *p = blob
    c.ar = <double *>p; p += nd
    c.tw = <double *>p; p += nd
    c.th = <double *>p; p += nd
    c.s_ar = <double *>p; p += nd
    c.s_tw = <double *>p; p += nd
    c.s_th = <double *>p; p += nd
    c.cur_x = <double *>p; p += nd
    c.cur_y = <double *>p; p += nd
    c.cur_w = <double *>p; p += nd
    c.cur_h = <double *>p; p += nd
    c.new_x = <double *>p; p += nd
    c.new_y = <double *>p; p += nd
    c.new_w = <double *>p; p += nd
    c.new_h = <double *>p; p += nd
    c.cx = <double *>p; p += cap * sizeof(double)
    c.ch = <double *>p; p += cap * sizeof(double)
    c.tmp_cx = <double *>p; p += cap * sizeof(double)
    c.tmp_ch = <double *>p; p += cap * sizeof(double)
    c.parent = <int *>p; p += ni
    c.left = <int *>p; p += ni
    c.right = <int *>p; p += ni
    c.block_of = <int *>p; p += ni
    c.node_of = <int *>p; p += ni
    c.s_parent = <int *>p; p += ni
    c.s_left = <int *>p; p += ni
    c.s_right = <int *>p; p += ni
    c.s_block_of = <int *>p; p += ni
    c.s_node_of = <int *>p; p += ni
    c.cur_viol = <int *>p; p += ni
    c.new_viol = <int *>p; p += ni
    c.best_viol = <int *>p; p += ni
    c.viol_buf = <int *>p; p += ni
    c.at_edge = <int *>p; p += ni
    c.unconstrained = <int *>p; p += ni
    c.constrained_here = <int *>p; p += ni
    c.uf = <int *>p; p += ni
    c.stack = <int *>p; p += (n + 4) * sizeof(int)
    c.fs_node = <int *>p; p += (n + 2) * sizeof(int)
    c.fs_side = <int *>p; p += (n + 2) * sizeof(int)
    c.cur_cl = <int *>p; p += ng_i
    c.new_cl = <int *>p; p += ng_i
    c.best_cl = <int *>p; p += ng_i
    c.best_x = &out_x[0]
    c.best_y = &out_y[0]
    c.best_w = &out_w[0]
    c.best_h = &out_h[0]

    try:
        with nogil:
            random_tree(&c, &rng)
            pack(&c, c.cur_x, c.cur_y, c.cur_w, c.cur_h)
            evaluate(&c, c.cur_x, c.cur_y, c.cur_w, c.cur_h, &cur,
                     c.cur_viol, c.cur_cl)

            # temperature calibration (mirrors calibrate_initial_temperature)
            positive_sum = 0.0
            positive_n = 0
            for i in range(CAL_SAMPLES):
                propose_standard(&c, &rng, ar_move_prob, swap_vs_move_prob,
                                 left_vs_right_prob)
                pack(&c, c.new_x, c.new_y, c.new_w, c.new_h)
                evaluate(&c, c.new_x, c.new_y, c.new_w, c.new_h, &cand,
                         c.new_viol, c.new_cl)
                tree_restore(&c)
                delta = cand.total - cur.total
                if delta > 0.0:
                    positive_sum += delta
                    positive_n += 1
            if positive_n == 0:
                temperature = 1.0
            else:
                temperature = -(positive_sum / positive_n) / log(acceptance_target)

            best = cur
            memcpy(c.best_x, c.cur_x, nd)
            memcpy(c.best_y, c.cur_y, nd)
            memcpy(c.best_w, c.cur_w, nd)
            memcpy(c.best_h, c.cur_h, nd)
            memcpy(c.best_viol, c.cur_viol, ni)
            if n_groups:
                memcpy(c.best_cl, c.cur_cl, ng_i)

            for step in range(steps):
                fixed = 0
                if c.anchored and c.has_boundary:
                    u = rng_uniform(&rng)
                    if u <= fixing_move_prob and cur.bv_count > 0:
                        fixing_move(&c, &rng, c.cur_x, c.cur_y, c.cur_w, c.cur_h)
                        pack(&c, c.cur_x, c.cur_y, c.cur_w, c.cur_h)
                        evaluate(&c, c.cur_x, c.cur_y, c.cur_w, c.cur_h, &cur,
                                 c.cur_viol, c.cur_cl)
                        fixed = 1
                if not fixed:
                    propose_standard(&c, &rng, ar_move_prob,
                                     swap_vs_move_prob, left_vs_right_prob)
                    pack(&c, c.new_x, c.new_y, c.new_w, c.new_h)
                    evaluate(&c, c.new_x, c.new_y, c.new_w, c.new_h, &cand,
                             c.new_viol, c.new_cl)
                    delta = cand.total - cur.total
                    if delta <= 0.0 or rng_uniform(&rng) < exp(-delta / temperature):
                        cur = cand
                        memcpy(c.cur_x, c.new_x, nd)
                        memcpy(c.cur_y, c.new_y, nd)
                        memcpy(c.cur_w, c.new_w, nd)
                        memcpy(c.cur_h, c.new_h, nd)
                        memcpy(c.cur_viol, c.new_viol, ni)
                        if n_groups:
                            memcpy(c.cur_cl, c.new_cl, ng_i)
                    else:
                        tree_restore(&c)
                if (cur.legal and not best.legal) or \
                        (cur.legal == best.legal and cur.total < best.total):
                    best = cur
                    memcpy(c.best_x, c.cur_x, nd)
                    memcpy(c.best_y, c.cur_y, nd)
                    memcpy(c.best_w, c.cur_w, nd)
                    memcpy(c.best_h, c.cur_h, nd)
                    memcpy(c.best_viol, c.cur_viol, ni)
                    if n_groups:
                        memcpy(c.best_cl, c.cur_cl, ng_i)
                if (step + 1) % moves_per_temperature == 0:
                    temperature *= cooling_ratio

        for i in range(best.bv_count):
            out_viol[i] = c.best_viol[i]
        for i in range(n_groups):
            out_clusters[i] = c.best_cl[i]
        for i in range(n):
            fin_x[i] = c.cur_x[i]
            fin_y[i] = c.cur_y[i]
            fin_w[i] = c.cur_w[i]
            fin_h[i] = c.cur_h[i]
        for i in range(cur.bv_count):
            fin_viol[i] = c.cur_viol[i]
        for i in range(n_groups):
            fin_clusters[i] = c.cur_cl[i]
        return _report_dict(&best), _report_dict(&cur)
    finally:
        free(blob)


cdef dict _report_dict(Report *rep):
    return {
        "hpwl": rep.hpwl,
        "bbox_area": rep.bbox_area,
        "outline_cost": rep.ocost,
        "grouping_cost": rep.gcost,
        "boundary_violation_count": rep.bv_count,
        "preplaced_deviation": rep.predev,
        "overlap_area": rep.overlap,
        "total": rep.total,
        "legal": bool(rep.legal),
        "outline_overflow": rep.over,
    }
