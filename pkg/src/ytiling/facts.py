"""Brute-force checkers for the small matching facts used in the argument.

A multipartite k-graph has no s-matching exactly when its complement (inside the
complete multipartite k-graph) hits every s-matching, so the maximum edge count is
``N - (minimum hitting set)``; the hitting set comes from the exact kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .kernels import min_hitting_set

F0_LIMIT = 64
F11_LIMIT = 16


@dataclass(frozen=True)
class FactReport:
    fact: str
    params: dict
    computed: dict
    expected: dict
    witnesses: list
    match: bool

    def to_json(self) -> dict:
        return {
            "fact": self.fact,
            "params": self.params,
            "computed": self.computed,
            "expected": self.expected,
            "witnesses": self.witnesses,
            "match": self.match,
        }


def _cells(sizes: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(s) for s in sizes)))


def _matchings(cells: Sequence[tuple[int, ...]], s: int) -> list[int]:
    """Bitmask (over cell indices) of every s-matching; a matching uses distinct
    coordinates in every class."""
    out = []
    k = len(cells[0])

    def rec(start, chosen, used):
        if len(chosen) == s:
            out.append(sum(1 << i for i in chosen))
            return
        for i in range(start, len(cells)):
            c = cells[i]
            if all(c[j] not in used[j] for j in range(k)):
                rec(i + 1, chosen + [i], [used[j] | {c[j]} for j in range(k)])

    rec(0, [], [set() for _ in range(k)])
    return out


def _max_without_matching(sizes: Sequence[int], s: int):
    cells = _cells(sizes)
    sets = _matchings(cells, s)
    if not sets:
        return len(cells), (), cells, sets, True
    hit = min_hitting_set(sets)
    return len(cells) - len(hit.choice), hit.choice, cells, sets, not hit.exhausted


def _complement(cells, removed) -> list[tuple[int, ...]]:
    gone = set(removed)
    return [c for i, c in enumerate(cells) if i not in gone]


def check_fact_f0(a: int, b: int) -> FactReport:
    """Max edges of a 3-partite 3-graph with parts (a, a, b) and no a-matching, against (a-1)ab."""
    if not 2 <= a <= b:
        raise ValueError(f"need 2 <= a <= b, got a={a}, b={b}")
    if a * a * b > F0_LIMIT:
        raise ValueError(f"a*a*b = {a * a * b} exceeds the search limit {F0_LIMIT}")
    best, removed, cells, _, optimal = _max_without_matching((a, a, b), a)
    expected = (a - 1) * a * b
    witness = [list(c) for c in _complement(cells, removed)]
    return FactReport(
        "f0", {"a": a, "b": b},
        {"max_edges": best, "optimal": optimal},
        {"max_edges": expected},
        [witness],
        optimal and best == expected,
    )


def _is_star_like(edges: Sequence[tuple[int, ...]], k: int, t: int) -> bool:
    """Some class uses at most t distinct vertices across the edges."""
    return any(len({e[j] for e in edges}) <= t for j in range(k))


def _is_extremal_shape(edges: Sequence[tuple[int, ...]], k: int, n: int, t: int, minus: bool) -> bool:
    """K_{t,n} (or K_{t,n} minus one edge) up to a part-preserving relabeling.

    With ``t * n^{k-1}`` (or one fewer) edges, this holds iff some class uses at most t
    vertices: those edges then sit inside a copy of K_{t,n}.
    """
    full = t * n ** (k - 1)
    return len(edges) == full - int(minus) and _is_star_like(edges, k, t)


def _all_graphs_without(cells, sets, size: int):
    """Every edge set of the given size (complement of a removal set) hitting no matching."""
    N = len(cells)
    full = (1 << N) - 1
    out = []
    for removed in itertools.combinations(range(N), N - size):
        rm = sum(1 << i for i in removed)
        keep = full & ~rm
        if all(m & ~keep for m in sets):
            out.append(_complement(cells, removed))
    return out


def check_fact_f11_f1(k: int, n: int, t: int) -> FactReport:
    """Max size without a (t+1)-matching, and uniqueness of the extremal shapes.

    Uniqueness at the maximum is only claimed for n >= 3 and uniqueness one below it
    only for n >= 4, t >= 3; outside that range it is computed and reported but does not
    affect ``match``.
    """
    if not (k >= 2 and n >= 2 and 1 <= t <= n - 1):
        raise ValueError(f"need k >= 2, n >= 2, 1 <= t <= n-1; got k={k}, n={n}, t={t}")
    if n ** k > F11_LIMIT:
        raise ValueError(f"n^k = {n ** k} exceeds the enumeration limit {F11_LIMIT}")
    sizes = (n,) * k
    best, removed, cells, sets, optimal = _max_without_matching(sizes, t + 1)
    expected = t * n ** (k - 1)
    extremal = _all_graphs_without(cells, sets, best)
    bad = [g for g in extremal if not _is_extremal_shape(g, k, n, t, False)]
    computed = {
        "max_edges": best,
        "optimal": optimal,
        "extremal_graphs": len(extremal),
        "extremal_unique": not bad,
    }
    unique_scope = n >= 3
    computed["unique_in_scope"] = unique_scope
    expect = {"max_edges": expected, "extremal_unique": True}
    witnesses = [[list(e) for e in g] for g in bad[:3]]
    ok = optimal and best == expected and (not bad or not unique_scope)
    if t >= 3 and n >= 4:
        below = _all_graphs_without(cells, sets, expected - 1)
        bad_minus = [g for g in below if not _is_extremal_shape(g, k, n, t, True)]
        computed["minus_graphs"] = len(below)
        computed["minus_unique"] = not bad_minus
        expect["minus_unique"] = True
        witnesses += [[list(e) for e in g] for g in bad_minus[:3]]
        ok = ok and not bad_minus
    return FactReport("f11f1", {"k": k, "n": n, "t": t}, computed, expect, witnesses, ok)
