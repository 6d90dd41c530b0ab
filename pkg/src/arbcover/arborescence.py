"""Minimum cost arborescences, their dual certificates, and L-tight arborescences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvalidArgument, NoArborescence
from .graph import ArcId, Digraph, LaminarFamily, Number, exact, membership, normalize


@dataclass(frozen=True)
class Arborescence:
    root: int
    arcs: frozenset

    def __len__(self):
        return len(self.arcs)


@dataclass(frozen=True)
class TightStructure:
    """Optimal dual solution of the arborescence LP.

    ``duals[F] > 0`` for every member of ``laminar``; an arc is tight when its
    cost plus ``offset`` equals the sum of duals over the members it enters.
    ``offset`` is the uniform shift that made all costs non-negative (every
    ``root``-arborescence has ``n - 1`` arcs, so the shift does not change
    which arborescences are optimal).
    """

    root: int
    tight_arcs: frozenset
    laminar: LaminarFamily
    duals: dict
    offset: Number = 0

    def reduced_cost(self, D: Digraph, c: Mapping[ArcId, Number], arc_id: ArcId) -> Number:
        u, v = D.tail(arc_id), D.head(arc_id)
        entered = sum((y for F, y in self.duals.items() if v in F and u not in F), 0)
        return normalize(exact(c[arc_id]) + self.offset - entered)


def _edmonds(n: int, root: int, arcs: list) -> set:
    """Chu-Liu/Edmonds on ``arcs = [(u, v, cost, k)]``; returns the chosen ``k``.

    Ties between equal-cost entering arcs go to the smaller ``k``.
    """
    best = [None] * n
    for arc in arcs:
        u, v, c, k = arc
        if v == root or u == v:
            continue
        b = best[v]
        if b is None or c < b[2] or (c == b[2] and k < b[3]):
            best[v] = arc
    for v in range(n):
        if v != root and best[v] is None:
            raise NoArborescence(f"node {v} cannot be reached")

    state = [0] * n  # 0 unseen, 1 on current walk, 2 finished
    state[root] = 2
    cycles = []
    for v0 in range(n):
        walk = []
        v = v0
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = best[v][0]
        if state[v] == 1:
            cycles.append(walk[walk.index(v):])
        for x in walk:
            state[x] = 2
    if not cycles:
        return {best[v][3] for v in range(n) if v != root}

    new_id = [-1] * n
    count = 0
    for cyc in cycles:
        for x in cyc:
            new_id[x] = count
        count += 1
    for v in range(n):
        if new_id[v] < 0:
            new_id[v] = count
            count += 1
    on_cycle = [False] * n
    for cyc in cycles:
        for x in cyc:
            on_cycle[x] = True

    contracted = []
    head_here = {}
    for u, v, c, k in arcs:
        nu, nv = new_id[u], new_id[v]
        if nu == nv:
            continue
        if on_cycle[v]:
            c = c - best[v][2]
        contracted.append((nu, nv, c, k))
        head_here[k] = v
    chosen = _edmonds(count, new_id[root], contracted)

    entry = {}
    for k in chosen:
        v = head_here[k]
        if on_cycle[v]:
            entry[new_id[v]] = v
    result = set(chosen)
    for cyc in cycles:
        v_in = entry[new_id[cyc[0]]]
        result.update(best[x][3] for x in cyc if x != v_in)
    return result


def min_cost_arborescence(D: Digraph, c: Mapping[ArcId, Number], root: int):
    """Minimum cost spanning arborescence rooted at ``root``.

    Returns ``(Arborescence, cost)``. Raises :class:`NoArborescence` when some
    node is unreachable from ``root``.
    """
    if not 0 <= root < D.n:
        raise InvalidArgument(f"root {root} is not in the graph")
    costs = [exact(c[a]) for a in D.arc_ids]
    arcs = [(int(D.tails[k]), int(D.heads[k]), costs[k], k) for k in range(D.m)]
    chosen = _edmonds(D.n, root, arcs)
    total = normalize(sum((costs[k] for k in chosen), 0))
    return Arborescence(root, frozenset(D.arc_ids[k] for k in chosen)), total


def _scc_labels(n, tails, heads):
    g = coo_matrix((np.ones(len(tails), dtype=np.int8), (tails, heads)), shape=(n, n)).tocsr()
    _, labels = connected_components(g, directed=True, connection="strong")
    return labels


def tight_structure(D: Digraph, c: Mapping[ArcId, Number], root: int) -> TightStructure:
    """Tight arcs and the dual-positive laminar family of a min cost ``root``-arborescence.

    Primal-dual: while some strongly connected component of the tight-arc graph
    other than the root's has no tight arc entering it, raise its dual until an
    entering arc becomes tight. Each component is raised at most once, so the
    loop runs at most ``2n - 1`` times.
    """
    if not 0 <= root < D.n:
        raise InvalidArgument(f"root {root} is not in the graph")
    costs = [exact(c[a]) for a in D.arc_ids]
    offset = max(0, -min(costs, default=0))
    rc = [x + offset for x in costs]
    tails, heads = D.tails, D.heads
    duals: dict[frozenset, Number] = {}
    while True:
        tight = np.array([x == 0 for x in rc], dtype=bool)
        labels = _scc_labels(D.n, tails[tight], heads[tight])
        has_entry = np.zeros(labels.max() + 1, dtype=bool)
        lt, lh = labels[tails[tight]], labels[heads[tight]]
        has_entry[lh[lt != lh]] = True
        has_entry[labels[root]] = True
        pending = np.flatnonzero(~has_entry)
        if pending.size == 0:
            break
        comps = [frozenset(np.flatnonzero(labels == x).tolist()) for x in pending]
        F = min(comps, key=lambda X: (len(X), sorted(X)))
        inside = membership(D.n, F)
        entering = np.flatnonzero(inside[heads] & ~inside[tails])
        if entering.size == 0:
            raise NoArborescence(f"no arc enters {sorted(F)}")
        eps = min(rc[k] for k in entering)
        duals[F] = normalize(duals.get(F, 0) + eps)
        for k in entering:
            rc[k] = rc[k] - eps
    tight_ids = frozenset(D.arc_ids[k] for k in range(D.m) if rc[k] == 0)
    return TightStructure(root, tight_ids, LaminarFamily(duals), duals, normalize(Fraction(offset)))


def is_arborescence(D: Digraph, arcs, root: int) -> bool:
    idx = [D.index(a) for a in arcs]
    if len(idx) != D.n - 1:
        return False
    parent = [-1] * D.n
    for k in idx:
        v = int(D.heads[k])
        if v == root or parent[v] >= 0:
            return False
        parent[v] = int(D.tails[k])
    for v in range(D.n):
        seen = 0
        x = v
        while x != root:
            x = parent[x]
            seen += 1
            if x < 0 or seen > D.n:
                return False
    return True


def is_l_tight(D: Digraph, L: LaminarFamily, B: Arborescence) -> bool:
    """Whether ``B`` enters each member at most once and never one holding its root.

    Also checks the equivalent form (``B[F]`` spans ``F`` as an arborescence,
    i.e. has ``|F| - 1`` arcs since ``B`` is acyclic); they must agree.
    """
    idx = np.array([D.index(a) for a in B.arcs], dtype=np.int64)
    tails, heads = D.tails[idx], D.heads[idx]
    by_entry = True
    by_restriction = True
    for F in L:
        inside = membership(D.n, F)
        entering = int(np.count_nonzero(inside[heads] & ~inside[tails]))
        if entering > 1 or (B.root in F and entering > 0):
            by_entry = False
        if int(np.count_nonzero(inside[heads] & inside[tails])) != len(F) - 1:
            by_restriction = False
    assert by_entry == by_restriction, "L-tightness characterisations disagree"
    return by_entry


def _entry_counts(D: Digraph, L: LaminarFamily) -> list[int]:
    counts = np.zeros(D.m, dtype=np.int64)
    for F in L:
        inside = membership(D.n, F)
        counts += inside[D.heads] & ~inside[D.tails]
    return counts.tolist()


def find_l_tight(D: Digraph, L: LaminarFamily, root: int | None = None) -> Arborescence | None:
    """An L-tight arborescence (rooted at ``root`` if given), or ``None``.

    With ``c1(a)`` the number of members ``a`` enters, every ``r``-arborescence
    costs at least the number of members avoiding ``r``, with equality exactly
    for L-tight ones. Without a root, the smallest feasible root is found with
    one extra solve on a super-root graph and the answer is the minimum
    ``c1``-cost arborescence at that root.
    """
    L = LaminarFamily(L)
    L.check_within(D.n)
    c1 = _entry_counts(D, L)
    costs = dict(zip(D.arc_ids, c1))

    def avoiding(r):
        return sum(1 for F in L if r not in F)

    if root is not None:
        try:
            B, cost = min_cost_arborescence(D, costs, root)
        except NoArborescence:
            return None
        return B if cost == avoiding(root) else None
    if D.n == 0:
        return None

    # super-root n with arc n -> v of cost K*(M - avoiding(v)) + v; M exceeds
    # any c1-cost so two super-root arcs never beat one, K separates the
    # root id tie-break from the excess
    K = D.n + 1
    M = len(L) * (D.n + 1) + 2
    arcs = [(int(D.tails[k]), int(D.heads[k]), K * c1[k], k) for k in range(D.m)]
    for v in range(D.n):
        arcs.append((D.n, v, K * (M - avoiding(v)) + v, D.m + v))
    chosen = _edmonds(D.n + 1, D.n, arcs)
    roots = [k - D.m for k in chosen if k >= D.m]
    if len(roots) != 1:
        return None
    r = roots[0]
    excess = sum(c1[k] for k in chosen if k < D.m) - avoiding(r)
    if excess != 0:
        return None
    B, cost = min_cost_arborescence(D, costs, r)
    assert cost == avoiding(r)
    return B


def root_set(D: Digraph) -> frozenset[int]:
    """Nodes that can root a spanning arborescence of ``D``.

    This is the unique source component of the condensation when there is
    exactly one, else empty. The result is strongly connected with no
    entering arc.
    """
    if D.n == 0:
        return frozenset()
    labels = _scc_labels(D.n, D.tails, D.heads)
    has_entry = np.zeros(labels.max() + 1, dtype=bool)
    lt, lh = labels[D.tails], labels[D.heads]
    has_entry[lh[lt != lh]] = True
    sources = np.flatnonzero(~has_entry)
    if sources.size != 1:
        return frozenset()
    R = frozenset(np.flatnonzero(labels == sources[0]).tolist())
    inside = membership(D.n, R)
    assert not np.any(inside[D.heads] & ~inside[D.tails])
    return R
