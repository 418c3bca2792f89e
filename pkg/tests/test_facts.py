import itertools
import json

import networkx as nx
import pytest

from oracles import max_without_matching_milp
from ytiling.facts import check_fact_f0, check_fact_f11_f1


@pytest.mark.parametrize("a, b, value", [(2, 2, 4), (2, 3, 6), (3, 3, 18), (3, 4, 24)])
def test_f0_values(a, b, value):
    rep = check_fact_f0(a, b)
    assert rep.computed["max_edges"] == value == (a - 1) * a * b
    assert rep.match and rep.computed["optimal"]
    assert len(rep.witnesses[0]) == value


@pytest.mark.parametrize("a, b", [(2, 2), (2, 3), (3, 3)])
def test_f0_against_milp(a, b):
    assert check_fact_f0(a, b).computed["max_edges"] == max_without_matching_milp((a, a, b), a)


def test_f0_witness_has_no_matching():
    rep = check_fact_f0(3, 3)
    edges = [tuple(e) for e in rep.witnesses[0]]
    for trio in itertools.combinations(edges, 3):
        assert any(len({e[j] for e in trio}) < 3 for j in range(3))


def test_f0_rejects():
    for a, b in [(1, 2), (3, 2), (4, 5)]:
        with pytest.raises(ValueError):
            check_fact_f0(a, b)


def nx_matching_size(edges):
    G = nx.Graph()
    G.add_edges_from((("L", u), ("R", v)) for u, v in edges)
    return len(nx.max_weight_matching(G, maxcardinality=True))


def bipartite_extremal_oracle(n, t, size):
    """All edge sets of K_{n,n} with ``size`` edges and no (t+1)-matching, and how many are stars."""
    cells = list(itertools.product(range(n), range(n)))
    graphs = [g for g in itertools.combinations(cells, size) if nx_matching_size(g) <= t]
    starlike = [g for g in graphs if len({u for u, _ in g}) <= t or len({v for _, v in g}) <= t]
    return len(graphs), len(starlike)


def test_f11_bipartite_n3():
    rep = check_fact_f11_f1(2, 3, 1)
    assert rep.computed["max_edges"] == 3 and rep.match
    total, star = bipartite_extremal_oracle(3, 1, 3)
    assert rep.computed["extremal_graphs"] == total == star == 6
    assert rep.computed["extremal_unique"]


def test_f1_bipartite_n4_t3():
    rep = check_fact_f11_f1(2, 4, 3)
    assert rep.computed["max_edges"] == 12 and rep.match
    total, star = bipartite_extremal_oracle(4, 3, 12)
    assert rep.computed["extremal_graphs"] == total == star == 8
    total, star = bipartite_extremal_oracle(4, 3, 11)
    assert rep.computed["minus_graphs"] == total == star == 96
    assert rep.computed["minus_unique"]


@pytest.mark.parametrize("t", [1, 2, 3])
def test_f11_max_against_milp(t):
    assert check_fact_f11_f1(2, 4, t).computed["max_edges"] == max_without_matching_milp((4, 4), t + 1) == 4 * t


def test_f11_three_uniform_n2_is_not_unique():
    # intersecting families in K_{2,2,2}: the four triples with at least two zeros are
    # pairwise intersecting but no class is constant
    rep = check_fact_f11_f1(3, 2, 1)
    assert rep.computed["max_edges"] == 4
    assert not rep.computed["extremal_unique"] and not rep.computed["unique_in_scope"]
    assert rep.match  # uniqueness is outside the claimed range for n = 2
    cells = list(itertools.product(range(2), repeat=3))
    fams = [f for f in itertools.combinations(cells, 4)
            if all(any(x == y for x, y in zip(e, g)) for e, g in itertools.combinations(f, 2))]
    stars = [f for f in fams if any(len({e[j] for e in f}) == 1 for j in range(3))]
    assert rep.computed["extremal_graphs"] == len(fams)
    assert len(stars) < len(fams)
    w = [tuple(e) for e in rep.witnesses[0]]
    assert tuple(w) in fams and tuple(w) not in stars


def test_f11_rejects():
    for args in [(1, 3, 1), (2, 3, 3), (2, 5, 1), (3, 3, 1)]:
        with pytest.raises(ValueError):
            check_fact_f11_f1(*args)


def test_report_json():
    rep = check_fact_f0(2, 2)
    doc = json.loads(json.dumps(rep.to_json()))
    assert doc["fact"] == "f0" and doc["params"] == {"a": 2, "b": 2} and doc["match"] is True
