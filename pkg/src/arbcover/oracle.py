"""Exhaustive reference computations for small instances.

Nothing here calls into the solver modules; the definitions are re-derived
directly so the results can serve as ground truth in tests.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import ResourceLimit
from .graph import Digraph, normalize

MAX_NODES = 7
MAX_ARCS = 14


def _guard(D: Digraph, max_nodes=MAX_NODES, max_arcs=MAX_ARCS):
    if D.n > max_nodes or D.m > max_arcs:
        raise ResourceLimit(f"oracle limited to n <= {max_nodes}, m <= {max_arcs}")


def _arcs(D):
    return [(a, int(u), int(v)) for a, u, v in zip(D.arc_ids, D.tails, D.heads)]


def enumerate_arborescences(D: Digraph, root: int | None = None) -> list[tuple[int, frozenset]]:
    """All spanning arborescences as ``(root, arc id set)`` pairs."""
    _guard(D)
    arcs = _arcs(D)
    into = {v: [(a, u) for a, u, h in arcs if h == v] for v in range(D.n)}
    roots = range(D.n) if root is None else [root]
    found = []
    for r in roots:
        others = [v for v in range(D.n) if v != r]
        for choice in itertools.product(*(into[v] for v in others)):
            parent = {v: u for v, (_, u) in zip(others, choice)}
            if all(_reaches_root(v, r, parent) for v in others):
                found.append((r, frozenset(a for a, _ in choice)))
    return found


def _reaches_root(v, r, parent):
    seen = set()
    while v != r:
        if v in seen:
            return False
        seen.add(v)
        v = parent[v]
    return True


def _is_tight(arcs_by_id, root, B, family):
    for F in family:
        entering = sum(1 for a in B if arcs_by_id[a][1] not in F and arcs_by_id[a][2] in F)
        if entering > 1 or (root in F and entering):
            return False
    return True


def tight_arborescences(D: Digraph, L) -> list[tuple[int, frozenset]]:
    family = [frozenset(F) for F in L]
    by_id = {a: (a, u, v) for a, u, v in _arcs(D)}
    return [(r, B) for r, B in enumerate_arborescences(D) if _is_tight(by_id, r, B, family)]


def oracle_blocker(D: Digraph, L, w) -> tuple[object, frozenset]:
    """Minimum weight hitting set of the L-tight arborescences.

    Candidate sets are scanned by increasing weight, then lexicographically on
    arc positions. ``(0, {})`` when there is nothing to hit; ``inf`` when an
    empty arborescence (single node) must be hit.
    """
    trees = [B for _, B in tight_arborescences(D, L)]
    if not trees:
        return 0, frozenset()
    if any(not B for B in trees):
        return math.inf, frozenset()
    position = {a: i for i, a in enumerate(D.arc_ids)}
    relevant = sorted(set().union(*trees), key=position.__getitem__)
    bit = {a: 1 << i for i, a in enumerate(relevant)}
    masks = [sum(bit[a] for a in B) for B in trees]
    weights = [Fraction(w[a]) for a in relevant]
    best = None
    for subset in range(1 << len(relevant)):
        if all(subset & m for m in masks):
            chosen = [i for i in range(len(relevant)) if subset >> i & 1]
            key = (sum((weights[i] for i in chosen), Fraction(0)), chosen)
            if best is None or key < best:
                best = key
    value, chosen = best
    return normalize(value), frozenset(relevant[i] for i in chosen)


def oracle_gamma(D: Digraph, L, w):
    return oracle_blocker(D, L, w)[0]


def _indegree(arcs, w, Z):
    return sum((Fraction(w[a]) for a, u, v in arcs if v in Z and u not in Z), Fraction(0))


def _assignments(nodes):
    """Every ordered pair of disjoint non-empty subsets of ``nodes``."""
    nodes = list(nodes)
    for labels in itertools.product((0, 1, 2), repeat=len(nodes)):
        Z1 = frozenset(v for v, x in zip(nodes, labels) if x == 1)
        Z2 = frozenset(v for v, x in zip(nodes, labels) if x == 2)
        if Z1 and Z2:
            yield Z1, Z2


def oracle_mu(G: Digraph, w):
    """min rho(Z1) + rho(Z2) over disjoint non-empty pairs; ``inf`` below two nodes."""
    _guard(G, max_arcs=10**6)
    arcs = _arcs(G)
    best = math.inf
    for Z1, Z2 in _assignments(range(G.n)):
        best = min(best, _indegree(arcs, w, Z1) + _indegree(arcs, w, Z2))
    return best if best == math.inf else normalize(best)


def oracle_indegree(G: Digraph, w, Z):
    return normalize(_indegree(_arcs(G), w, frozenset(Z)))


def oracle_lcut(D: Digraph, L, Z, within=None) -> frozenset:
    """``M(Z)`` of ``D[within]`` w.r.t. the members inside ``within``."""
    Z = frozenset(Z)
    scope = frozenset(range(D.n)) if within is None else frozenset(within)
    family = [frozenset(F) for F in L if frozenset(F) <= scope]
    out = set()
    for a, u, v in _arcs(D):
        if u not in scope or v not in scope:
            continue
        if v in Z and u not in Z:
            if not any(F & Z and u in F and v not in F for F in family):
                out.add(a)
    return frozenset(out)


def oracle_theta(D: Digraph, L, w):
    """min over F in L (plus V) and disjoint non-empty Z1, Z2 in F of f(Z1) + f(Z2)."""
    _guard(D, max_arcs=10**6)
    family = {frozenset(F) for F in L} | {frozenset(range(D.n))}
    best = math.inf
    for F in family:
        for Z1, Z2 in _assignments(sorted(F)):
            total = sum(
                (Fraction(w[a]) for Z in (Z1, Z2) for a in oracle_lcut(D, family, Z, F)),
                Fraction(0),
            )
            best = min(best, total)
    return best if best == math.inf else normalize(best)


def oracle_min_cost_arborescences(D: Digraph, c, root: int) -> tuple[object, set]:
    """Minimum cost and the set of all optimal ``root``-arborescences."""
    trees = [B for _, B in enumerate_arborescences(D, root)]
    if not trees:
        return None, set()
    costs = [sum((Fraction(c[a]) for a in B), Fraction(0)) for B in trees]
    low = min(costs)
    return normalize(low), {B for B, x in zip(trees, costs) if x == low}


def oracle_min_cost_blocker(D: Digraph, root: int, c, w):
    """Minimum weight arc set meeting every minimum cost ``root``-arborescence.

    Returns ``(value, arc set)``, or ``None`` when there is no
    ``root``-arborescence at all.
    """
    _, optimal = oracle_min_cost_arborescences(D, c, root)
    if not optimal:
        return None
    trees = list(optimal)
    if any(not B for B in trees):
        return math.inf, frozenset()
    position = {a: i for i, a in enumerate(D.arc_ids)}
    relevant = sorted(set().union(*trees), key=position.__getitem__)
    best = None
    for k in range(len(relevant) + 1):
        for combo in itertools.combinations(relevant, k):
            chosen = set(combo)
            if all(B & chosen for B in trees):
                key = (sum((Fraction(w[a]) for a in combo), Fraction(0)), [position[a] for a in combo])
                if best is None or key < best[0]:
                    best = key, frozenset(combo)
    return normalize(best[0][0]), best[1]
