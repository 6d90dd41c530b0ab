import math
import random

import pytest

from arbcover.arborescence import find_l_tight
from arbcover.blocker import (
    covering_tight_arborescences,
    f_value,
    l_cut,
    restricted_l_cut,
    solve_blocker,
)
from arbcover.errors import NoArborescence
from arbcover.graph import Digraph, LaminarFamily, relocate_tail, unit_weights, weighted_indegree
from arbcover.oracle import (
    oracle_gamma,
    oracle_lcut,
    oracle_min_cost_blocker,
    oracle_theta,
    tight_arborescences,
)

from conftest import V3
from instances import blocker_suite, random_digraph, random_laminar, random_weights, subsets


def augmented(n, L):
    """``L`` plus every singleton and the whole node set."""
    return LaminarFamily(list(L) + [{v} for v in range(n)] + [set(range(n))])


def random_instance(rng, n_max=5, m_max=10, sets=4):
    n = rng.randint(2, n_max)
    D = random_digraph(rng, n, rng.randint(n - 1, m_max))
    return D, LaminarFamily(random_laminar(rng, n, rng.randint(0, sets)))


def property_instances(seed, count=60):
    rng = random.Random(seed)
    for _ in range(count):
        D, L = random_instance(rng)
        yield D, L, augmented(D.n, L), random_weights(rng, D, 0, 4)


# --- L-cuts -----------------------------------------------------------------

def test_l_cut_whole_set_family_is_in_cut(I1):
    L = LaminarFamily([V3])
    for Z in subsets(range(3)):
        assert l_cut(I1, L, Z) == {a for a, u, v in I1.arcs() if v in Z and u not in Z}


def test_l_cut_singletons_unaffected():
    rng = random.Random(31)
    for _ in range(40):
        D, L = random_instance(rng)
        for v in range(D.n):
            assert l_cut(D, L, {v}) == {a for a, _, h in D.arcs() if h == v}


def test_l_cut_four_nodes():
    a, b, c, d = range(4)
    D = Digraph(4, [("ac", a, c), ("dc", d, c), ("ab", a, b)])
    L = LaminarFamily([set(range(4)), {a, b}])
    assert l_cut(D, L, {b, c}) == {"dc", "ab"}
    assert f_value(D, L, unit_weights(D), {b, c}) == 2


def test_f_value_examples(I1):
    L = LaminarFamily([V3, {1, 2}])
    assert f_value(I1, L, unit_weights(I1), {1, 2}) == 2
    assert f_value(I1, L, unit_weights(I1), V3) == 0


def test_l_cut_matches_definition():
    rng = random.Random(32)
    for _ in range(60):
        D, L = random_instance(rng)
        for Z in subsets(range(D.n)):
            assert l_cut(D, L, Z) == oracle_lcut(D, L, Z)
        F = rng.choice(list(L) + [frozenset(range(D.n))])
        for Z in subsets(F):
            assert restricted_l_cut(D, L, F, Z) == oracle_lcut(D, L, Z, within=F)


def test_tail_relocation_inside_left_member_keeps_f():
    rng = random.Random(33)
    done = 0
    while done < 100:
        D, L = random_instance(rng)
        w = random_weights(rng, D, 0, 4)
        options = [
            (a, F) for F in L for a, u, v in D.arcs() if u in F and v not in F and len(F) > 1
        ]
        if not options:
            continue
        arc, F = rng.choice(options)
        moved = relocate_tail(D, arc, rng.choice(sorted(F)))
        for Z in subsets(range(D.n)):
            assert f_value(D, L, w, Z) == f_value(moved, L, w, Z)
        done += 1


# --- structural properties --------------------------------------------------------

def test_union_cut_contained_in_parts():
    for D, _, L, _ in property_instances(34):
        sets = list(subsets(range(D.n)))
        for X in sets:
            for Y in sets:
                assert l_cut(D, L, X | Y) <= l_cut(D, L, X) | l_cut(D, L, Y)


def test_f_bounded_by_indegree():
    for D, L, La, w in property_instances(35):
        for family in (L, La):
            for Z in subsets(range(D.n)):
                assert f_value(D, family, w, Z) <= weighted_indegree(D, w, Z)


def test_arc_in_cut_iff_largest_separating_member_misses_z():
    for D, _, L, _ in property_instances(36):
        for Z in subsets(range(D.n)):
            cut = l_cut(D, L, Z)
            for a, s, t in D.arcs():
                enters = t in Z and s not in Z
                X = L.largest_separating(s, t)
                assert (a in cut) == (enters and not X & Z)


def test_root_set_of_tight_arborescences_has_zero_f():
    seen = 0
    for D, L, La, w in property_instances(37, count=150):
        roots = frozenset(r for r, _ in tight_arborescences(D, L))
        assert roots == frozenset(r for r, _ in tight_arborescences(D, La))
        if roots:
            seen += 1
            assert f_value(D, La, unit_weights(D), roots) == 0
    assert seen > 20


def test_zero_f_sets_closed_under_intersection():
    seen = 0
    for D, L, La, _ in property_instances(38, count=150):
        if find_l_tight(D, L) is None:
            continue
        seen += 1
        w = unit_weights(D)
        zero = [Z for Z in subsets(range(D.n)) if f_value(D, La, w, Z) == 0]
        for X in zero:
            for Y in zero:
                if X & Y:
                    assert f_value(D, La, w, X & Y) == 0
    assert seen > 20


def test_zero_f_set_contains_every_tight_root():
    for D, L, La, _ in property_instances(39, count=100):
        roots = {r for r, _ in tight_arborescences(D, L)}
        for Z in subsets(range(D.n)):
            if f_value(D, La, unit_weights(D), Z) == 0:
                assert roots <= Z


# --- the algorithm --------------------------------------------------------------

def test_cover_path(I3):
    res = covering_tight_arborescences(I3, [V3], unit_weights(I3))
    assert res.gamma == 1 and res.H == {"ab"}


def test_cover_I1(I1):
    res = covering_tight_arborescences(I1, [V3, {1, 2}], unit_weights(I1))
    assert res.gamma == 2
    # tie-break: the member {a, b} comes first in canonical order
    assert res.H == {"e2", "e3"}
    assert res.certificate.F == {1, 2}
    assert find_l_tight(I1.without_arcs(res.H), LaminarFamily([V3, {1, 2}])) is None


def test_cover_I2(I2):
    res = covering_tight_arborescences(I2, [V3, {1, 2}], unit_weights(I2))
    assert res.gamma == 1 and res.H == {"e0"}


def test_cover_without_tight_arborescence():
    D = Digraph.from_edges(4, [(0, 1), (2, 3)])
    res = covering_tight_arborescences(D, [], unit_weights(D))
    assert res.gamma == 0 and res.H == set() and res.trivial


def test_cover_single_node():
    res = covering_tight_arborescences(Digraph(1, []), [], {})
    assert res.gamma == math.inf


def test_cover_matches_oracles():
    for D, L, w in blocker_suite(seed=41, count=120):
        res = covering_tight_arborescences(D, L, w)
        assert res.gamma == oracle_gamma(D, L, w) == oracle_theta(D, L, w)
        assert sum(w[a] for a in res.H) == res.gamma
        family = LaminarFamily(L)
        assert find_l_tight(D.without_arcs(res.H), family) is None
        assert not tight_arborescences(D.without_arcs(res.H), family)
        if res.certificate is not None:
            cert = res.certificate
            assert cert.Z1 and cert.Z2 and not cert.Z1 & cert.Z2
            assert cert.Z1 | cert.Z2 <= cert.F


def test_solve_blocker_I5(I5, I5_costs):
    res = solve_blocker(I5, 0, I5_costs, unit_weights(I5))
    assert res.gamma == 1 and res.H == {"ra"}


def test_solve_blocker_two_nodes():
    D = Digraph(2, [("rv", 0, 1), ("vr", 1, 0)])
    res = solve_blocker(D, 0, {"rv": 1, "vr": 1}, unit_weights(D))
    assert res.gamma == 1 and res.H == {"rv"}


def test_solve_blocker_I1_equal_costs(I1):
    res = solve_blocker(I1, 0, {a: 1 for a in I1.arc_ids}, unit_weights(I1))
    assert res.gamma == 2 == oracle_min_cost_blocker(I1, 0, {a: 1 for a in I1.arc_ids}, unit_weights(I1))[0]


def test_solve_blocker_without_arborescence(I3):
    with pytest.raises(NoArborescence):
        solve_blocker(I3, 2, {"ab": 0, "bc": 0}, unit_weights(I3))


def test_solve_blocker_matches_oracle():
    rng = random.Random(42)
    done = 0
    while done < 120:
        n = rng.randint(2, 5)
        D = random_digraph(rng, n, rng.randint(n - 1, 9))
        c = {a: rng.randint(0, 3) for a in D.arc_ids}
        w = random_weights(rng, D, 1, 4)
        r = rng.randrange(n)
        expected = oracle_min_cost_blocker(D, r, c, w)
        if expected is None:
            continue
        done += 1
        res = solve_blocker(D, r, c, w)
        assert res.gamma == expected[0]
        assert sum(w[a] for a in res.H) == res.gamma
