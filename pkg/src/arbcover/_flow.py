"""Max-flow kernels on int64 capacities.

Networks are stored as paired residual edges: edge ``e`` and its reverse
``e ^ 1``. ``adj[start[v]:start[v + 1]]`` lists the edge indices leaving ``v``
(forward and reverse), ``to[e]`` is the head of ``e`` and ``to[e ^ 1]`` its tail.

All kernels take a ``limit``/``bound`` and stop augmenting once the flow
reaches it; a returned flow equal to the limit means "not below the limit" and
the residual network is then not a max-flow residual.
"""

import numpy as np

from ._accel import njit


def build_network(n, tails, heads, caps):
    """Residual network arrays ``(start, adj, to, cap)`` for arcs ``tails -> heads``."""
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    m = tails.shape[0]
    to = np.empty(2 * m, dtype=np.int64)
    to[0::2] = heads
    to[1::2] = tails
    cap = np.zeros(2 * m, dtype=np.int64)
    cap[0::2] = caps
    frm = np.empty(2 * m, dtype=np.int64)
    frm[0::2] = tails
    frm[1::2] = heads
    adj = np.argsort(frm, kind="stable").astype(np.int64)
    start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(frm, minlength=n), out=start[1:])
    return start, adj, to, cap


@njit
def max_flow(start, adj, to, cap, s, t, limit, level, it, queue, stack):
    """Dinic's algorithm, mutating ``cap`` into the residual capacities."""
    n = start.shape[0] - 1
    flow = 0
    while flow < limit:
        for i in range(n):
            level[i] = -1
        level[s] = 0
        qh = 0
        qt = 1
        queue[0] = s
        while qh < qt:
            v = queue[qh]
            qh += 1
            for k in range(start[v], start[v + 1]):
                e = adj[k]
                u = to[e]
                if cap[e] > 0 and level[u] < 0:
                    level[u] = level[v] + 1
                    queue[qt] = u
                    qt += 1
        if level[t] < 0:
            break
        for i in range(n):
            it[i] = start[i]
        while flow < limit:
            v = s
            depth = 0
            while v != t:
                advanced = False
                while it[v] < start[v + 1]:
                    e = adj[it[v]]
                    u = to[e]
                    if cap[e] > 0 and level[u] == level[v] + 1:
                        stack[depth] = e
                        depth += 1
                        v = u
                        advanced = True
                        break
                    it[v] += 1
                if not advanced:
                    if depth == 0:
                        break
                    # dead end: drop v from the level graph and retreat
                    level[v] = -1
                    depth -= 1
                    v = to[stack[depth] ^ 1]
                    it[v] += 1
            if v != t:
                break
            f = limit - flow
            for i in range(depth):
                c = cap[stack[i]]
                if c < f:
                    f = c
            for i in range(depth):
                e = stack[i]
                cap[e] -= f
                cap[e ^ 1] += f
            flow += f
    return flow


@njit
def source_side(start, adj, to, cap, s, mark):
    """Mark the nodes reachable from ``s`` in the residual network."""
    n = start.shape[0] - 1
    for i in range(n):
        mark[i] = False
    queue = np.empty(n, dtype=np.int64)
    queue[0] = s
    mark[s] = True
    qh = 0
    qt = 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        for k in range(start[v], start[v + 1]):
            e = adj[k]
            u = to[e]
            if cap[e] > 0 and not mark[u]:
                mark[u] = True
                queue[qt] = u
                qt += 1


@njit
def sink_side(start, adj, to, cap, t, mark):
    """Mark the nodes that can reach ``t`` in the residual network."""
    n = start.shape[0] - 1
    for i in range(n):
        mark[i] = False
    queue = np.empty(n, dtype=np.int64)
    queue[0] = t
    mark[t] = True
    qh = 0
    qt = 1
    while qh < qt:
        x = queue[qh]
        qh += 1
        for k in range(start[x], start[x + 1]):
            e = adj[k]
            u = to[e]
            # residual edge u -> x is the reverse of e
            if cap[e ^ 1] > 0 and not mark[u]:
                mark[u] = True
                queue[qt] = u
                qt += 1


@njit
def min_cut(start, adj, to, cap0, s, t, limit):
    n = start.shape[0] - 1
    cap = cap0.copy()
    level = np.empty(n, dtype=np.int64)
    it = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    mark = np.zeros(n, dtype=np.bool_)
    f = max_flow(start, adj, to, cap, s, t, limit, level, it, queue, stack)
    if f < limit:
        source_side(start, adj, to, cap, s, mark)
    return f, mark


@njit
def rooted_cut_scan(start, adj, to, cap0, t, inf):
    """min over ``v != t`` of the min ``t -> v`` cut; the sink side is the
    minimal one for the first minimising ``v``. Returns
    ``(value, v, sink_mask, calls)``."""
    n = start.shape[0] - 1
    cap = np.empty_like(cap0)
    level = np.empty(n, dtype=np.int64)
    it = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    mark = np.zeros(n, dtype=np.bool_)
    best = inf
    best_v = -1
    calls = 0
    for v in range(n):
        if v == t:
            continue
        cap[:] = cap0
        f = max_flow(start, adj, to, cap, t, v, best, level, it, queue, stack)
        calls += 1
        if f < best:
            best = f
            best_v = v
            sink_side(start, adj, to, cap, v, mark)
    return best, best_v, mark, calls


@njit
def anchor_scan(start, adj, to, cap0, inf):
    """Smallest node ``t`` maximising min{in-degree(X): X non-empty, t not in X}.

    The inner minimum for a candidate is abandoned as soon as it cannot beat
    the best value found so far. Returns ``(t, value, calls)``.
    """
    n = start.shape[0] - 1
    cap = np.empty_like(cap0)
    level = np.empty(n, dtype=np.int64)
    it = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    best = -1
    best_t = 0
    calls = 0
    for t in range(n):
        running = inf
        for v in range(n):
            if v == t:
                continue
            cap[:] = cap0
            f = max_flow(start, adj, to, cap, t, v, running, level, it, queue, stack)
            calls += 1
            if f < running:
                running = f
            if running <= best:
                break
        if running > best:
            best = running
            best_t = t
    return best_t, best, calls


@njit
def double_cut_scan(start, adj, to, cap0, n, sources, bound):
    """Minimum ``s1 -> t2`` cut over ``s in sources`` and ``t != s`` in the
    two-copy network (node ``v`` is copy one, ``n + v`` copy two).

    Only cuts strictly below ``bound`` are reported; ties keep the first pair
    in scan order. Returns ``(value, s, t, source_mask, calls)`` with
    ``s = -1`` when nothing beat the bound.
    """
    N = start.shape[0] - 1
    cap = np.empty_like(cap0)
    level = np.empty(N, dtype=np.int64)
    it = np.empty(N, dtype=np.int64)
    queue = np.empty(N, dtype=np.int64)
    stack = np.empty(N, dtype=np.int64)
    mark = np.zeros(N, dtype=np.bool_)
    best = bound
    best_s = -1
    best_t = -1
    calls = 0
    for i in range(sources.shape[0]):
        s = sources[i]
        for t in range(n):
            if t == s:
                continue
            cap[:] = cap0
            f = max_flow(start, adj, to, cap, s, n + t, best, level, it, queue, stack)
            calls += 1
            if f < best:
                best = f
                best_s = s
                best_t = t
                source_side(start, adj, to, cap, s, mark)
    return best, best_s, best_t, mark, calls
