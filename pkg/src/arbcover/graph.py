"""Digraphs with stable arc identities, arc attributes and laminar families.

Nodes are dense integers ``0..n-1``. Every arc carries a hashable identifier
that survives induced subgraphs and tail relocations, so arc sets computed on
a derived graph can always be reported against the original one.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping

import numpy as np

from .errors import InvalidArgument

ArcId = Hashable
Number = int | Fraction


def exact(value) -> Number:
    """Normalise a numeric value to ``int`` or ``Fraction``; floats are refused."""
    if isinstance(value, bool):
        raise InvalidArgument("booleans are not valid arc values")
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Rational):
        q = Fraction(value)
        return q.numerator if q.denominator == 1 else q
    raise InvalidArgument(
        f"arc values must be exact (int or Fraction), got {type(value).__name__}"
    )


def normalize(value: Number) -> Number:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class Digraph:
    """Immutable directed multigraph without self-loops.

    ``origin[i]`` is the node of the parent graph that node ``i`` came from
    when the graph was produced by :func:`induced_subgraph`; it is ``None``
    for graphs built directly.
    """

    __slots__ = ("n", "arc_ids", "tails", "heads", "origin", "_index")

    def __init__(self, n: int, arcs: Iterable[tuple[ArcId, int, int]], origin=None):
        if n < 0:
            raise InvalidArgument("node count must be non-negative")
        ids, tails, heads = [], [], []
        index: dict[ArcId, int] = {}
        for arc_id, u, v in arcs:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"arc {arc_id!r} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InvalidArgument(f"arc {arc_id!r} is a self-loop")
            if arc_id in index:
                raise InvalidArgument(f"duplicate arc id {arc_id!r}")
            index[arc_id] = len(ids)
            ids.append(arc_id)
            tails.append(u)
            heads.append(v)
        self.n = n
        self.arc_ids = tuple(ids)
        self.tails = np.asarray(tails, dtype=np.int64)
        self.heads = np.asarray(heads, dtype=np.int64)
        self.tails.setflags(write=False)
        self.heads.setflags(write=False)
        self.origin = None if origin is None else tuple(int(x) for x in origin)
        self._index = index

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        """Build a graph whose arc ids are the positions ``0, 1, ...`` of ``edges``."""
        return cls(n, ((i, u, v) for i, (u, v) in enumerate(edges)))

    @property
    def m(self) -> int:
        return len(self.arc_ids)

    @property
    def nodes(self) -> range:
        return range(self.n)

    def arcs(self) -> Iterator[tuple[ArcId, int, int]]:
        for i, arc_id in enumerate(self.arc_ids):
            yield arc_id, int(self.tails[i]), int(self.heads[i])

    def index(self, arc_id: ArcId) -> int:
        try:
            return self._index[arc_id]
        except KeyError:
            raise InvalidArgument(f"unknown arc id {arc_id!r}") from None

    def tail(self, arc_id: ArcId) -> int:
        return int(self.tails[self.index(arc_id)])

    def head(self, arc_id: ArcId) -> int:
        return int(self.heads[self.index(arc_id)])

    def with_tails(self, tails) -> "Digraph":
        """Same arcs, same ids, new tail array (used for batched relocations)."""
        return Digraph(self.n, zip(self.arc_ids, tails, self.heads), self.origin)

    def without_arcs(self, arc_ids: Iterable[ArcId]) -> "Digraph":
        drop = set(arc_ids)
        return Digraph(self.n, (a for a in self.arcs() if a[0] not in drop), self.origin)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.arc_ids == other.arc_ids
            and np.array_equal(self.tails, other.tails)
            and np.array_equal(self.heads, other.heads)
        )

    def __hash__(self):
        return hash((self.n, self.arc_ids, self.tails.tobytes(), self.heads.tobytes()))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


def _node_set(D: Digraph, Z) -> frozenset[int]:
    Z = frozenset(int(z) for z in Z)
    if not Z:
        raise InvalidArgument("node set must be non-empty")
    if min(Z) < 0 or max(Z) >= D.n:
        raise InvalidArgument("node set contains ids outside the graph")
    return Z


def membership(n: int, Z) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[list(Z)] = True
    return mask


def induced_subgraph(D: Digraph, Z) -> Digraph:
    """``D[Z]``: keep the arcs with both ends in ``Z``; nodes are renumbered in
    increasing order of their id in ``D``."""
    Z = _node_set(D, Z)
    order = sorted(Z)
    local = {v: i for i, v in enumerate(order)}
    arcs = ((a, local[u], local[v]) for a, u, v in D.arcs() if u in local and v in local)
    return Digraph(len(order), arcs, origin=order)


def relocate_tail(D: Digraph, arc_id: ArcId, new_tail: int) -> Digraph:
    i = D.index(arc_id)
    new_tail = int(new_tail)
    if not 0 <= new_tail < D.n:
        raise InvalidArgument(f"node {new_tail} is not in the graph")
    if new_tail == D.heads[i]:
        raise InvalidArgument("relocation would create a self-loop")
    tails = D.tails.copy()
    tails[i] = new_tail
    return D.with_tails(tails)


def entering_arcs(D: Digraph, Z) -> list[ArcId]:
    mask = membership(D.n, _node_set(D, Z))
    sel = mask[D.heads] & ~mask[D.tails]
    return [D.arc_ids[i] for i in np.flatnonzero(sel)]


def leaving_arcs(D: Digraph, Z) -> list[ArcId]:
    mask = membership(D.n, _node_set(D, Z))
    sel = mask[D.tails] & ~mask[D.heads]
    return [D.arc_ids[i] for i in np.flatnonzero(sel)]


def check_attribute(D: Digraph, values: Mapping[ArcId, Number], nonnegative=False) -> dict:
    """Validate that ``values`` is defined on exactly the arcs of ``D``."""
    if set(values) != set(D.arc_ids):
        missing = set(D.arc_ids) - set(values)
        extra = set(values) - set(D.arc_ids)
        raise InvalidArgument(f"attribute mismatch: missing {missing or '{}'}, extra {extra or '{}'}")
    out = {a: exact(values[a]) for a in D.arc_ids}
    if nonnegative and any(x < 0 for x in out.values()):
        raise InvalidArgument("weights must be non-negative")
    return out


def unit_weights(D: Digraph) -> dict:
    return {a: 1 for a in D.arc_ids}


def weighted_indegree(D: Digraph, w: Mapping[ArcId, Number], Z) -> Number:
    """Total weight of the arcs with head in ``Z`` and tail outside it."""
    return normalize(sum((w[a] for a in entering_arcs(D, Z)), 0))


def scaled_weights(D: Digraph, w: Mapping[ArcId, Number]) -> tuple[np.ndarray, int]:
    """Integer weight array ``w * scale`` with ``scale`` the lcm of denominators.

    Raises when the scaled total would not leave headroom in int64, since the
    flow kernels add an effectively-infinite capacity on top of it.
    """
    vals = [exact(w[a]) for a in D.arc_ids]
    scale = 1
    for x in vals:
        if isinstance(x, Fraction):
            scale = np.lcm(scale, x.denominator).item()
    ints = [int(x * scale) for x in vals]
    if sum(ints) > 2**60:
        raise InvalidArgument("weights too large for exact int64 flow computations")
    return np.asarray(ints, dtype=np.int64), scale


def unscale(value: int, scale: int) -> Number:
    return normalize(Fraction(int(value), scale))


def _canonical_key(F: frozenset) -> tuple:
    return (len(F), tuple(sorted(F)))


class LaminarFamily:
    """Laminar family of non-empty node sets in canonical order.

    Canonical order is ascending size, ties broken lexicographically on the
    sorted node ids, so every member is listed after all of its subsets.
    """

    __slots__ = ("sets",)

    def __init__(self, sets: Iterable[Iterable[int]] = ()):
        uniq = {frozenset(int(v) for v in F) for F in sets}
        if frozenset() in uniq:
            raise InvalidArgument("laminar family members must be non-empty")
        ordered = tuple(sorted(uniq, key=_canonical_key))
        bad = crossing_pair(ordered)
        if bad is not None:
            raise InvalidArgument(f"sets {sorted(bad[0])} and {sorted(bad[1])} cross")
        self.sets = ordered

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __contains__(self, F):
        return frozenset(F) in set(self.sets)

    def __eq__(self, other):
        return isinstance(other, LaminarFamily) and self.sets == other.sets

    def __hash__(self):
        return hash(self.sets)

    def __repr__(self):
        return f"LaminarFamily({[sorted(F) for F in self.sets]})"

    def check_within(self, n: int) -> None:
        for F in self.sets:
            if min(F) < 0 or max(F) >= n:
                raise InvalidArgument(f"laminar member {sorted(F)} is not a subset of 0..{n - 1}")

    def add(self, F) -> "LaminarFamily":
        return LaminarFamily((*self.sets, F))

    def restrict(self, F) -> "LaminarFamily":
        """``L[F]``: the members contained in ``F``."""
        F = frozenset(F)
        return LaminarFamily(X for X in self.sets if X <= F)

    def relabel(self, mapping: Mapping[int, int]) -> "LaminarFamily":
        return LaminarFamily({mapping[v] for v in X} for X in self.sets)

    def containing(self, v: int) -> list[frozenset]:
        return [F for F in self.sets if v in F]

    def largest_separating(self, s: int, t: int) -> frozenset | None:
        """Largest member containing ``s`` but not ``t`` (members containing
        ``s`` form a chain, so this is well defined)."""
        best = None
        for F in self.sets:
            if s in F and t not in F:
                best = F
        return best


def crossing_pair(sets) -> tuple[frozenset, frozenset] | None:
    sets = list(sets)
    for i, X in enumerate(sets):
        for Y in sets[i + 1:]:
            if X & Y and not (X <= Y or Y <= X):
                return X, Y
    return None


def is_laminar(sets) -> bool:
    return crossing_pair([frozenset(F) for F in sets]) is None
