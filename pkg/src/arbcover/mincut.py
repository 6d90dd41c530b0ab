"""Minimum cuts: s-t cuts, rooted in-cuts, anchor nodes and double cuts.

Weights are exact (int or Fraction). They are scaled to int64 once per call
so the flow kernels stay exact; results are scaled back before returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import _flow
from .errors import InvalidArgument
from .graph import ArcId, Digraph, Number, scaled_weights, unscale


@dataclass
class CutStats:
    """Counts max-flow invocations (one per s-t cut computed)."""

    calls: int = 0


@dataclass(frozen=True)
class CutResult:
    value: Number
    source_side: frozenset[int]


@dataclass(frozen=True)
class DoubleCut:
    """``value = rho(Z1) + rho(Z2)`` for disjoint non-empty ``Z1``, ``Z2``.

    A graph with fewer than two nodes has no double cut; it is represented by
    ``value = math.inf`` and empty sets.
    """

    value: Number | float
    Z1: frozenset[int] = field(default_factory=frozenset)
    Z2: frozenset[int] = field(default_factory=frozenset)

    @property
    def is_finite(self) -> bool:
        return self.value != math.inf


INFINITE = DoubleCut(math.inf)


def _count(stats, calls):
    if stats is not None:
        stats.calls += int(calls)


def _mask_to_set(mask, offset=0, n=None):
    idx = np.flatnonzero(mask)
    if n is not None:
        idx = idx[(idx >= offset) & (idx < offset + n)] - offset
    return frozenset(int(i) for i in idx)


def min_st_cut(G: Digraph, w: Mapping[ArcId, Number], s: int, t: int, stats=None) -> CutResult:
    """Minimum weight ``s``-``t`` cut; the source side is the minimal one
    (nodes reachable from ``s`` in the final residual network)."""
    if s == t:
        raise InvalidArgument("source and sink must differ")
    for x in (s, t):
        if not 0 <= x < G.n:
            raise InvalidArgument(f"node {x} is not in the graph")
    caps, scale = scaled_weights(G, w)
    net = _flow.build_network(G.n, G.tails, G.heads, caps)
    f, mark = _flow.min_cut(*net, s, t, int(caps.sum()) + 1)
    _count(stats, 1)
    return CutResult(unscale(f, scale), _mask_to_set(mark))


def _rooted_cut(n, tails, heads, caps, t):
    net = _flow.build_network(n, tails, heads, caps)
    return _flow.rooted_cut_scan(*net, t, int(caps.sum()) + 1)


def min_rooted_cut_avoiding(G: Digraph, w: Mapping[ArcId, Number], t: int, stats=None):
    """``min{rho(Z): Z non-empty, t not in Z}`` and a minimiser ``Z``.

    Evaluated as the minimum over ``v != t`` of min ``t -> v`` cuts, taking
    the smallest minimising ``v`` and its minimal sink side.
    """
    if G.n < 2:
        raise InvalidArgument("need at least two nodes")
    if not 0 <= t < G.n:
        raise InvalidArgument(f"node {t} is not in the graph")
    caps, scale = scaled_weights(G, w)
    value, _v, mark, calls = _rooted_cut(G.n, G.tails, G.heads, caps, t)
    _count(stats, calls)
    return unscale(value, scale), _mask_to_set(mark)


def _anchor(n, tails, heads, caps):
    if n == 1:
        return 0, 0
    net = _flow.build_network(n, tails, heads, caps)
    t, _value, calls = _flow.anchor_scan(*net, int(caps.sum()) + 1)
    return int(t), int(calls)


def anchor_node(G: Digraph, w: Mapping[ArcId, Number], stats=None) -> int:
    """Node ``t`` with ``rho(Z) >= mu(G)/2`` for every non-empty ``Z`` avoiding it.

    Any maximiser of ``min{rho(X): X non-empty, t not in X}`` qualifies; the
    smallest such node id is returned.
    """
    if G.n == 0:
        raise InvalidArgument("empty graph has no anchor node")
    caps, _scale = scaled_weights(G, w)
    t, calls = _anchor(G.n, G.tails, G.heads, caps)
    _count(stats, calls)
    return t


@dataclass(frozen=True)
class AuxGraph:
    """Two-copy network: node ``v`` of copy one is ``v``, of copy two ``n + v``."""

    graph: Digraph
    weights: dict
    provenance: dict  # aux arc id -> original arc id (absent for link arcs)
    infinity: Number


def _aux_arrays(n, tails, heads, caps):
    winf = int(caps.sum()) + 1
    nodes = np.arange(n, dtype=np.int64)
    aux_tails = np.concatenate([heads, tails + n, nodes])
    aux_heads = np.concatenate([tails, heads + n, nodes + n])
    aux_caps = np.concatenate([caps, caps, np.full(n, winf, dtype=np.int64)])
    return aux_tails, aux_heads, aux_caps, winf


def build_double_cut_aux(G: Digraph, w: Mapping[ArcId, Number]) -> AuxGraph:
    """Reverse copy of ``G``, forward copy of ``G``, and an effectively
    infinite arc from each node's first copy to its second copy."""
    if G.n < 2:
        raise InvalidArgument("need at least two nodes")
    caps, scale = scaled_weights(G, w)
    winf = int(caps.sum()) + 1
    arcs, weights, prov = [], {}, {}
    for a, u, v in G.arcs():
        arcs.append((("rev", a), v, u))
        weights[("rev", a)] = w[a]
        prov[("rev", a)] = a
    for a, u, v in G.arcs():
        arcs.append((("fwd", a), G.n + u, G.n + v))
        weights[("fwd", a)] = w[a]
        prov[("fwd", a)] = a
    inf = unscale(winf, scale)
    for v in G.nodes:
        arcs.append((("link", v), v, G.n + v))
        weights[("link", v)] = inf
    return AuxGraph(Digraph(2 * G.n, arcs), weights, prov, inf)


def _double_cut(n, tails, heads, caps, sources, bound=None):
    """Array-level double cut; returns ``(value, Z1, Z2, calls)`` or
    ``(None, None, None, calls)`` when no cut is strictly below ``bound``."""
    if n < 2:
        return None, None, None, 0
    aux_tails, aux_heads, aux_caps, winf = _aux_arrays(n, tails, heads, caps)
    if bound is None or bound > winf:
        bound = winf
    net = _flow.build_network(2 * n, aux_tails, aux_heads, aux_caps)
    sources = np.asarray(sources, dtype=np.int64)
    value, s, _t, mark, calls = _flow.double_cut_scan(*net, n, sources, bound)
    if s < 0:
        return None, None, None, int(calls)
    Z1 = _mask_to_set(mark, 0, n)
    Z2 = frozenset(range(n)) - _mask_to_set(mark, n, n)
    return int(value), Z1, Z2, int(calls)


def min_double_cut(
    G: Digraph,
    w: Mapping[ArcId, Number],
    fixed_source: int | None = None,
    stats=None,
    upper_bound: Number | None = None,
) -> DoubleCut | None:
    """Minimum double cut ``mu(G)`` with a witnessing pair ``(Z1, Z2)``.

    With ``fixed_source=a`` only pairs with ``a in Z1`` are considered.
    ``Z1`` is read from the minimal source side of the best ``s1 -> t2`` cut
    and ``Z2`` from its complement, scanning ``(s, t)`` lexicographically.
    If ``upper_bound`` is given, returns ``None`` unless the minimum is
    strictly below it.
    """
    if G.n < 2:
        return INFINITE if upper_bound is None else None
    caps, scale = scaled_weights(G, w)
    if fixed_source is None:
        sources = np.arange(G.n)
    else:
        if not 0 <= fixed_source < G.n:
            raise InvalidArgument(f"node {fixed_source} is not in the graph")
        sources = np.array([fixed_source])
    bound = None
    if upper_bound is not None and upper_bound != math.inf:
        # integer v satisfies v < x iff v < ceil(x)
        bound = math.ceil(upper_bound * scale)
    value, Z1, Z2, calls = _double_cut(G.n, G.tails, G.heads, caps, sources, bound)
    _count(stats, calls)
    if value is None:
        return None
    return DoubleCut(unscale(value, scale), Z1, Z2)
