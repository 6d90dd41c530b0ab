"""Minimum weight arc sets meeting every L-tight (or minimum cost) arborescence.

An arborescence is L-tight for a laminar family L if it enters every member at
most once and never enters a member containing its root. ``gamma(D, L)`` is the
least weight of an arc set whose removal leaves no L-tight arborescence. It is
attained by an L-double cut ``M(Z1) | M(Z2)`` inside ``D[F]`` for some
``F in L``, where the L-cut ``M(Z)`` is the set of arcs entering ``Z`` that do
not leave any member meeting ``Z``.

:func:`covering_tight_arborescences` finds such a cut with ``O(n^3)`` minimum
cut computations: it relocates the tails of arcs leaving each member onto an
anchor node of that member (which leaves every ``f``-value unchanged), after
which ordinary minimum double cuts of a few relocated graphs find the optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .arborescence import find_l_tight, tight_structure
from .errors import InvalidArgument
from .graph import (
    ArcId,
    Digraph,
    LaminarFamily,
    Number,
    check_attribute,
    induced_subgraph,
    membership,
    normalize,
    scaled_weights,
    unscale,
)
from .mincut import CutStats, _anchor, _double_cut


@dataclass(frozen=True)
class DoubleCutCertificate:
    """``F`` in L and disjoint non-empty ``Z1, Z2`` inside it.

    ``override`` is ``None`` when the witnessing double cut was found in the
    anchor-relocated graph, or the node ``a`` whose own relocation was applied
    on top of it.
    """

    F: frozenset
    Z1: frozenset
    Z2: frozenset
    override: int | None = None


@dataclass(frozen=True)
class BlockerResult:
    gamma: Number | float
    H: frozenset
    certificate: DoubleCutCertificate | None = None
    mincut_calls: int = 0

    @property
    def trivial(self) -> bool:
        return self.certificate is None


def _lcut_mask(n, tails, heads, members, Z, within=None):
    """Boolean arc mask of ``M(Z)`` over the arrays; restricted to ``D[within]``
    and ``L[within]`` when ``within`` is given."""
    z = membership(n, Z)
    sel = z[heads] & ~z[tails]
    if within is not None:
        f = membership(n, within)
        sel &= f[heads] & f[tails]
        members = [X for X in members if X <= within]
    for X in members:
        if X & Z:
            x = membership(n, X)
            sel &= ~(x[tails] & ~x[heads])
    return sel


def l_cut(D: Digraph, L: LaminarFamily, Z) -> frozenset:
    """Arcs entering ``Z`` that leave no member of ``L`` meeting ``Z``."""
    Z = frozenset(int(z) for z in Z)
    if not Z or min(Z) < 0 or max(Z) >= D.n:
        raise InvalidArgument("Z must be a non-empty node set of the graph")
    sel = _lcut_mask(D.n, D.tails, D.heads, list(L), Z)
    return frozenset(D.arc_ids[i] for i in np.flatnonzero(sel))


def f_value(D: Digraph, L: LaminarFamily, w: Mapping[ArcId, Number], Z) -> Number:
    return normalize(sum((w[a] for a in l_cut(D, L, Z)), 0))


def restricted_l_cut(D: Digraph, L: LaminarFamily, F, Z) -> frozenset:
    """``M_{D[F], L[F]}(Z)`` reported with the arc ids of ``D``."""
    sub = induced_subgraph(D, F)
    local = {v: i for i, v in enumerate(sub.origin)}
    sub_l = L.restrict(F).relabel(local)
    return l_cut(sub, sub_l, {local[z] for z in Z})


class _Restriction:
    """Arc indices of ``D[F]`` and the global -> local node map for ``F``."""

    def __init__(self, n, tails, heads, F):
        self.order = np.array(sorted(F), dtype=np.int64)
        self.local = np.full(n, -1, dtype=np.int64)
        self.local[self.order] = np.arange(len(self.order))
        inside = membership(n, F)
        self.arcs = np.flatnonzero(inside[tails] & inside[heads])
        self.leaving = np.flatnonzero(inside[tails] & ~inside[heads])

    @property
    def size(self):
        return len(self.order)

    def to_global(self, Z):
        return frozenset(int(self.order[i]) for i in Z)


def covering_tight_arborescences(
    D: Digraph, L, w: Mapping[ArcId, Number], stats: CutStats | None = None
) -> BlockerResult:
    """Minimum weight arc set meeting every L-tight arborescence of ``D``.

    ``V`` is added to ``L`` if missing. When ``D`` has no L-tight arborescence
    the answer is ``gamma = 0`` with an empty set and no certificate. A single
    node graph cannot be blocked (``gamma = inf``).
    """
    if D.n == 0:
        raise InvalidArgument("graph has no nodes")
    w = check_attribute(D, w, nonnegative=True)
    L = LaminarFamily(L)
    L.check_within(D.n)
    V = frozenset(range(D.n))
    L = L.add(V)
    stats = stats if stats is not None else CutStats()
    if find_l_tight(D, L) is None:
        return BlockerResult(0, frozenset(), None, stats.calls)
    if D.n == 1:
        return BlockerResult(math.inf, frozenset(), None, stats.calls)

    caps, scale = scaled_weights(D, w)
    heads = D.heads
    members = L.sets
    parts = {F: _Restriction(D.n, D.tails, heads, F) for F in members}

    # First phase. Tail membership in any member is invariant under these
    # relocations, so the arc index sets in ``parts`` stay valid throughout.
    tails = D.tails.copy()
    for F in members:
        p = parts[F]
        idx = p.arcs
        a_local, calls = _anchor(p.size, p.local[tails[idx]], p.local[heads[idx]], caps[idx])
        stats.calls += calls
        tails[p.leaving] = p.order[a_local]
    relocated = {}
    for a in range(D.n):
        t = tails.copy()
        for F in L.containing(a):
            t[parts[F].leaving] = a
        relocated[a] = t

    # Second phase: strict improvement only, so the first candidate in
    # (member, override, pair) order wins ties.
    best = None
    found = None
    for F in members:
        p = parts[F]
        if p.size < 2:
            continue
        idx = p.arcs
        local_heads = p.local[heads[idx]]
        candidates = [(None, tails, np.arange(p.size))]
        candidates += [(int(a), relocated[int(a)], [int(p.local[a])]) for a in p.order]
        for override, t, sources in candidates:
            value, Z1, Z2, calls = _double_cut(
                p.size, p.local[t[idx]], local_heads, caps[idx], sources, best
            )
            stats.calls += calls
            if value is not None:
                best = value
                found = DoubleCutCertificate(F, p.to_global(Z1), p.to_global(Z2), override)

    assert found is not None
    members_l = list(members)
    sel = _lcut_mask(D.n, D.tails, heads, members_l, found.Z1, within=found.F)
    sel |= _lcut_mask(D.n, D.tails, heads, members_l, found.Z2, within=found.F)
    H = frozenset(D.arc_ids[i] for i in np.flatnonzero(sel))
    gamma = unscale(best, scale)
    weight = normalize(sum((w[a] for a in H), 0))
    assert weight == gamma, f"extracted cut weight {weight} differs from optimum {gamma}"
    return BlockerResult(gamma, H, found, stats.calls)


def solve_blocker(
    D: Digraph,
    r: int,
    c: Mapping[ArcId, Number],
    w: Mapping[ArcId, Number],
    stats: CutStats | None = None,
) -> BlockerResult:
    """Minimum weight arc set meeting every minimum ``c``-cost ``r``-arborescence.

    Keeps only tight arcs not entering ``r``; the ``r``-arborescences there
    that enter every dual-positive set once are exactly the optimal ones, and
    they are the only L-tight arborescences since ``r`` has no entering arc.
    Raises :class:`NoArborescence` if ``D`` has no ``r``-arborescence.
    """
    c = check_attribute(D, c)
    w = check_attribute(D, w, nonnegative=True)
    ts = tight_structure(D, c, r)
    keep = [a for a in D.arc_ids if a in ts.tight_arcs and D.head(a) != r]
    reduced = D.without_arcs(set(D.arc_ids) - set(keep))
    return covering_tight_arborescences(reduced, ts.laminar, {a: w[a] for a in keep}, stats)
