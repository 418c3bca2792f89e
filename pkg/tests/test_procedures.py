import random
from dataclasses import replace

import networkx as nx
import pytest

from oracles import has_k23_plus
from ytiling.hypergraph import build, complete, gen_random
from ytiling.procedures import (
    Digraph,
    bipartite_matching_cover,
    construct_R,
    extend_R,
    find_k23_plus,
    improvement_search,
    link_graph,
    ordered_v_tiling,
    r_invariant_violations,
    table_bound,
    triple_profile,
    y_free_check,
)
from ytiling.tiling import PatternCopy, Tiling, greedy_tiling, verify_tiling


def uncovered(H, t):
    return set(range(H.n)) - t.vertices()


def test_table_bound():
    assert [table_bound(x) for x in (0, 1, 10, 11, 14, 15, 16, 17, 24, 25)] == [64, 52, 52, 48, 48, 46, 46, 37, 37, None]


def test_construct_R_on_complete_host():
    # K9 with one Y-copy on {0,1,2,3}: every copy vertex sees C(5,2) = 10 pairs in U
    H = complete(9, 3)
    idx = H.edge_index
    t = Tiling((PatternCopy.of(H, idx[(0, 1, 2)], idx[(0, 1, 3)]),))
    rc = construct_R(H, t, uncovered(H, t), threshold=10)
    assert (rc.R, rc.t1, rc.t2) == ((0,), 1, 0)
    assert rc.W == frozenset({1, 2, 3, 4, 5, 6, 7, 8})
    assert r_invariant_violations(H, rc, t, uncovered(H, t)) == []
    assert extend_R(H, rc) == 0
    none = construct_R(H, t, uncovered(H, t), threshold=11)
    assert (none.R, none.t1, none.t2) == ((), 0, 1) and none.W == frozenset(range(4, 9))


def test_construct_R_cascades():
    # the second copy only reaches the threshold after the first one has joined W
    H = complete(13, 3)
    idx = H.edge_index
    a = PatternCopy.of(H, idx[(0, 1, 2)], idx[(0, 1, 3)])
    b = PatternCopy.of(H, idx[(4, 5, 6)], idx[(4, 5, 7)])
    t = Tiling((b, a))
    U = uncovered(H, t)
    rc = construct_R(H, t, U, threshold=20)  # C(5,2) = 10 before, C(8,2) = 28 after
    assert rc.t1 == 0
    rc = construct_R(H, t, U, threshold=10)
    assert rc.t1 == 2 and rc.ordered_tiling.copies == (b, a) and rc.R == (4, 0)
    assert r_invariant_violations(H, rc, t, U) == []


def test_construct_R_rejects():
    H = complete(9, 3)
    idx = H.edge_index
    t = Tiling((PatternCopy.of(H, idx[(0, 1, 2)], idx[(0, 1, 3)]),))
    with pytest.raises(ValueError):
        construct_R(H, t, uncovered(H, t), 0)
    with pytest.raises(ValueError):
        construct_R(H, t, {4, 5}, 3)
    bad = Tiling((PatternCopy.of(H, idx[(0, 1, 2)], idx[(0, 1, 3)]),) * 2)
    with pytest.raises(ValueError):
        construct_R(H, bad, set(), 3)


@pytest.mark.parametrize("seed", range(20))
def test_construct_R_invariants_random(seed):
    rng = random.Random(seed)
    H = gen_random(rng.randint(12, 30), 3, rng.choice([0.05, 0.15, 0.3]), seed)
    t = greedy_tiling(H)
    U = uncovered(H, t)
    rc = construct_R(H, t, U, threshold=rng.randint(1, 6))
    assert r_invariant_violations(H, rc, t, U) == []
    assert extend_R(H, rc) == 0


def test_invariant_checker_catches_tampering():
    H = complete(9, 3)
    idx = H.edge_index
    t = Tiling((PatternCopy.of(H, idx[(0, 1, 2)], idx[(0, 1, 3)]),))
    U = uncovered(H, t)
    rc = construct_R(H, t, U, threshold=11)
    assert r_invariant_violations(H, rc, t, U) == []
    assert r_invariant_violations(H, replace(rc, threshold=10), t, U)
    assert r_invariant_violations(H, replace(rc, W=frozenset({4})), t, U)


def test_y_free_check():
    H = build(6, 3, [(0, 1, 2), (0, 1, 3), (3, 4, 5)])
    c = y_free_check(H, range(6))
    assert c is not None and c.footprint == (0, 1, 2, 3)
    assert y_free_check(H, {0, 1, 2, 4, 5}) is None
    assert y_free_check(H, {0, 1}) is None
    Hc = complete(7, 3)
    c = y_free_check(Hc, {2, 4, 5, 6})
    assert set(c.footprint) == {2, 4, 5, 6}
    assert verify_tiling(Hc, Tiling((c,))) is None


def test_link_graph_examples():
    H = complete(14, 3)
    P, Q, W = (0, 1, 2, 3), (4, 5, 6, 7), range(8, 14)
    assert link_graph(H, W, P, Q, 6).size == 16
    assert link_graph(H, W, P, Q, 7).size == 0
    single = build(10, 3, [(1, 6, 8), (1, 6, 9), (0, 5, 8), (2, 3, 8)])
    assert link_graph(single, {8, 9}, P, Q, 2).edges == ((1, 6),)
    assert link_graph(single, {8, 9}, P, Q, 1).edges == ((0, 5), (1, 6))
    with pytest.raises(ValueError):
        link_graph(H, W, P, (3, 4, 5, 6), 1)
    with pytest.raises(ValueError):
        link_graph(H, {0}, P, Q, 1)


def test_link_graph_accepts_pattern_copies():
    H = complete(10, 3)
    idx = H.edge_index
    a = PatternCopy.of(H, idx[(0, 1, 2)], idx[(0, 1, 3)])
    b = PatternCopy.of(H, idx[(4, 5, 6)], idx[(4, 5, 7)])
    lg = link_graph(H, {8, 9}, a, b, 2)
    assert lg.blocks == ((0, 1, 2, 3), (4, 5, 6, 7)) and lg.size == 16


def test_koenig_small():
    # K_{2,3}: matching and cover both 2, cover is the small side
    mc = bipartite_matching_cover([0, 1], [2, 3, 4], [(u, v) for u in (0, 1) for v in (2, 3, 4)])
    assert len(mc.matching) == 2 and mc.cover == (0, 1)
    assert bipartite_matching_cover([0], [1], []).cover == ()
    mc = bipartite_matching_cover([0, 1], [2, 3], [(2, 0), (3, 0)])
    assert mc.matching == ((0, 2),) and mc.cover == (0,)
    with pytest.raises(ValueError):
        bipartite_matching_cover([0, 1], [1, 2], [])
    with pytest.raises(ValueError):
        bipartite_matching_cover([0, 1], [2, 3], [(0, 1)])


def random_bipartite(seed):
    rng = random.Random(seed)
    a, b = rng.randint(1, 8), rng.randint(1, 8)
    L, R = list(range(a)), list(range(a, a + b))
    p = rng.random()
    return L, R, [(u, v) for u in L for v in R if rng.random() < p]


@pytest.mark.parametrize("seed", range(200))
def test_koenig_against_networkx(seed):
    L, R, E = random_bipartite(seed)
    mc = bipartite_matching_cover(L, R, E)
    G = nx.Graph()
    G.add_nodes_from(L + R)
    G.add_edges_from(E)
    ref = nx.bipartite.hopcroft_karp_matching(G, top_nodes=L)
    assert len(mc.matching) == len(ref) // 2 == len(mc.cover)
    assert all(u in mc.cover or v in mc.cover for u, v in E)
    assert len({u for u, _ in mc.matching}) == len({v for _, v in mc.matching}) == len(mc.matching)
    assert set(mc.matching) <= set(E)


def test_koenig_edge_bound_on_samples():
    # a 4x4 bipartite graph with no 3-matching has a 2-vertex cover, hence at most 8 edges
    rng = random.Random(1)
    cells = [(u, v) for u in range(4) for v in range(4, 8)]
    for _ in range(3000):
        E = [c for c in cells if rng.random() < 0.5]
        if len(bipartite_matching_cover(range(4), range(4, 8), E).matching) <= 2:
            assert len(E) <= 8


def test_triple_profile_on_complete_host():
    H = complete(16, 3)
    T = [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)]
    prof = triple_profile(H, range(12, 16), *T, tau=4)
    assert all(lg.size == 16 for lg in prof.links)
    assert prof.improvable == (True, True, True) and prof.d_type == (False, False, False)
    assert prof.x_T == 48 and prof.f == 64 and prof.reference_bound is None
    assert prof.crossing_cover is None


def test_triple_profile_sparse_links():
    # only a star out of vertex 0 in the links: one crossing vertex covers G_T
    edges = [(0, v, w) for v in range(4, 12) for w in (12, 13)]
    H = build(14, 3, edges)
    T = [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)]
    prof = triple_profile(H, {12, 13}, *T, tau=2)
    assert [lg.size for lg in prof.links] == [4, 4, 0]
    assert prof.improvable == (False, False, False)
    assert prof.x_T == 8 and prof.reference_bound == 52
    assert prof.crossing_cover[0] == 0
    assert prof.f == 0


def test_triple_profile_d_type():
    # link between blocks 0 and 1 is K_{2,4} from {0,1}: at least 6 edges, covered by a same-side pair
    edges = [(u, v, 12) for u in (0, 1) for v in range(4, 8)]
    H = build(13, 3, edges)
    T = [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)]
    prof = triple_profile(H, {12}, *T, tau=1)
    assert prof.d_type == (True, False, False)
    assert prof.x_T == 0 and prof.reference_bound == 64
    with pytest.raises(ValueError):
        triple_profile(H, {12}, T[0], T[0], T[2], tau=1)


def test_improvement_search():
    H = complete(16, 3)
    T = [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)]
    res = improvement_search(H, range(12, 16), T)
    assert res.coverage >= 13 and res.tiling is not None
    assert verify_tiling(H, res.tiling) is None
    # without W the 12 copy vertices cannot give 13
    empty = improvement_search(H, [], T)
    assert empty.tiling is None and empty.coverage == 12 and not empty.exhausted
    with pytest.raises(ValueError):
        improvement_search(H, [0], T)


def test_k23_plus_examples():
    tt = Digraph.of(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert find_k23_plus(tt) == ((0, 1), (2, 3, 4))
    assert find_k23_plus(Digraph.of(5, [])) is None
    assert Digraph.of(3, [(0, 1), (0, 2)]).out(0) == {1, 2}
    with pytest.raises(ValueError):
        Digraph.of(3, [(1, 1)])
    with pytest.raises(ValueError):
        Digraph.of(3, [(0, 3)])


def test_k23_plus_all_four_vertex_digraphs():
    pairs = [(u, v) for u in range(4) for v in range(4) if u != v]
    for mask in range(1 << len(pairs)):
        arcs = [p for i, p in enumerate(pairs) if mask >> i & 1]
        assert (find_k23_plus(Digraph.of(4, arcs)) is not None) == has_k23_plus(4, arcs)


@pytest.mark.parametrize("seed", range(100))
def test_k23_plus_random_five(seed):
    rng = random.Random(seed)
    p = rng.uniform(0.3, 0.9)
    arcs = [(u, v) for u in range(5) for v in range(5) if u != v and rng.random() < p]
    found = find_k23_plus(Digraph.of(5, arcs))
    assert (found is not None) == has_k23_plus(5, arcs)
    if found:
        (a, b), sinks = found
        assert all((x, y) in arcs for x in (a, b) for y in sinks)


def test_ordered_v_tiling():
    r = ordered_v_tiling([(0, 1, 4), (2, 3, 4)], target=5)
    assert r.copies == (((0, 1, 4), (2, 3, 4)),) and r.short and r.pruned == 0
    pruned = ordered_v_tiling([(0, 1, 4), (2, 3, 4)], target=5, prune_threshold=2)
    assert pruned.copies == () and pruned.pruned == 2
    # the pair must avoid each other outside the shared third vertex
    assert ordered_v_tiling([(0, 1, 4), (1, 3, 4)], target=1).copies == ()
    many = [(a, a + 1, 100 + a // 4) for a in range(0, 40, 2)]
    r = ordered_v_tiling(many, target=3)
    assert len(r.copies) == 3 and not r.short
    with pytest.raises(ValueError):
        ordered_v_tiling([(0, 0, 1)], 1)


def test_ordered_v_tiling_copies_are_disjoint():
    rng = random.Random(4)
    F = [tuple(rng.sample(range(15), 3)) for _ in range(60)]
    r = ordered_v_tiling(F, target=10)
    seen = set()
    for e, g in r.copies:
        assert e[2] == g[2] and not set(e[:2]) & set(g[:2])
        vs = set(e) | set(g)
        assert len(vs) == 5 and not vs & seen
        seen |= vs
