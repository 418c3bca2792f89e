"""Immutable k-uniform hypergraphs, the extremal constructions, and elementary counts.

Vertices are the dense integers ``0..n-1``.  Every constructor documents which
prefix of the vertex range is its distinguished set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence


class HypergraphError(ValueError):
    """Raised for malformed edge input; ``index`` is the offending edge position."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class Pattern:
    """Y_{k,b}: two k-edges meeting in exactly b vertices."""

    k: int = 3
    b: int = 2

    def __post_init__(self):
        if not 0 < self.b < self.k:
            raise ValueError(f"need 0 < b < k, got k={self.k}, b={self.b}")

    @property
    def order(self) -> int:
        return 2 * self.k - self.b

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        # "y:3,2"
        body = text.split(":", 1)[1] if ":" in text else text
        k, b = (int(x) for x in body.split(","))
        return cls(k, b)

    def __str__(self) -> str:
        return f"y:{self.k},{self.b}"


Y32 = Pattern(3, 2)


@dataclass(frozen=True, eq=True)
class Hypergraph:
    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, m={self.m})"


def build(n: int, k: int, edge_list: Iterable[Iterable[int]]) -> Hypergraph:
    """Canonicalize raw edges into a Hypergraph, rejecting malformed input."""
    if k < 1:
        raise HypergraphError(f"uniformity must be positive, got {k}")
    if n < 0:
        raise HypergraphError(f"vertex count must be nonnegative, got {n}")
    seen: dict[tuple[int, ...], int] = {}
    for i, raw in enumerate(edge_list):
        e = tuple(sorted(raw))
        if len(e) != k:
            raise HypergraphError(f"edge {i} has {len(e)} vertices, expected {k}", i)
        if len(set(e)) != k:
            raise HypergraphError(f"edge {i} repeats a vertex: {e}", i)
        if e[0] < 0 or e[-1] >= n:
            raise HypergraphError(f"edge {i} has a vertex outside [0, {n}): {e}", i)
        if e in seen:
            raise HypergraphError(f"edge {i} duplicates edge {seen[e]}: {e}", i)
        seen[e] = i
    return Hypergraph(n, k, tuple(sorted(seen)))


def _trusted(n: int, k: int, edges: Iterable[tuple[int, ...]]) -> Hypergraph:
    # generators produce sorted, distinct tuples already
    return Hypergraph(n, k, tuple(sorted(edges)))


def complete(n: int, k: int) -> Hypergraph:
    return Hypergraph(n, k, tuple(itertools.combinations(range(n), k)))


def induced(H: Hypergraph, S: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
    """Sub-hypergraph spanned by ``S``, relabeled to ``0..|S|-1``.

    Returns the hypergraph and ``labels`` with ``labels[new] == old``.
    """
    labels = tuple(sorted(set(S)))
    for v in labels:
        if not 0 <= v < H.n:
            raise HypergraphError(f"vertex {v} outside [0, {H.n})")
    new_id = {v: i for i, v in enumerate(labels)}
    edges = [tuple(new_id[v] for v in e) for e in H.edges if all(v in new_id for v in e)]
    return Hypergraph(len(labels), H.k, tuple(edges)), labels


def degree_into_set(H: Hypergraph, v: int, S: Iterable[int]) -> int:
    """Number of edges containing ``v`` whose other two vertices lie in ``S``."""
    if H.k != 3:
        raise NotImplementedError("degree_into_set is defined for 3-graphs only")
    if not 0 <= v < H.n:
        raise HypergraphError(f"vertex {v} outside [0, {H.n})")
    S = S if isinstance(S, (set, frozenset)) else set(S)
    count = 0
    for i in H.incidence[v]:
        if all(u in S for u in H.edges[i] if u != v):
            count += 1
    return count


def crossing_edges(H: Hypergraph, A1, A2, A3) -> list[int]:
    """Indices of edges with exactly one vertex in each of three disjoint sets."""
    part: dict[int, int] = {}
    for j, A in enumerate((A1, A2, A3)):
        for v in A:
            part[v] = j
    out = []
    for i, e in enumerate(H.edges):
        if len(e) == 3 and {part.get(v, -1) for v in e} == {0, 1, 2}:
            out.append(i)
    return out


def density_triple(H: Hypergraph, A1, A2, A3) -> Fraction:
    A1, A2, A3 = set(A1), set(A2), set(A3)
    if not (A1 and A2 and A3):
        raise HypergraphError("density_triple needs three nonempty parts")
    if A1 & A2 or A2 & A3 or A1 & A3:
        raise HypergraphError("density_triple needs pairwise disjoint parts")
    if H.k != 3:
        raise NotImplementedError("crossing density is defined for 3-graphs only")
    return Fraction(len(crossing_edges(H, A1, A2, A3)), len(A1) * len(A2) * len(A3))


@dataclass(frozen=True)
class BlowUp:
    """``F{b}`` together with its clone maps."""

    graph: Hypergraph
    factor: int
    vertex_origin: tuple[int, ...]
    edge_origin: tuple[int, ...]

    def clones(self, v: int) -> range:
        return range(v * self.factor, (v + 1) * self.factor)


def blow_up(F: Hypergraph, b: int) -> BlowUp:
    """Replace every vertex by ``b`` clones; vertex ``v`` owns ids ``v*b .. v*b+b-1``."""
    if b < 1:
        raise ValueError(f"blow-up factor must be >= 1, got {b}")
    pairs = []
    for j, e in enumerate(F.edges):
        for clone in itertools.product(*(range(v * b, v * b + b) for v in e)):
            pairs.append((clone, j))
    pairs.sort()
    graph = Hypergraph(F.n * b, F.k, tuple(p[0] for p in pairs))
    vertex_origin = tuple(v // b for v in range(F.n * b))
    return BlowUp(graph, b, vertex_origin, tuple(p[1] for p in pairs))


def clique_order(s: int, pattern: Pattern) -> int:
    return pattern.order * (s + 1) - 1


def gen_clique_plus_isolated(n: int, s: int, k: int = 3, b: int = 2) -> Hypergraph:
    """Complete k-graph on the first (2k-b)(s+1)-1 vertices; the rest are isolated."""
    core = clique_order(s, Pattern(k, b))
    if n < core:
        raise ValueError(f"n={n} is below the clique order {core}")
    return Hypergraph(n, k, tuple(itertools.combinations(range(core), k)))


def gen_cover_construction(n: int, s: int, k: int = 3) -> Hypergraph:
    """All k-sets meeting the cover set ``{0..s-1}``."""
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    return Hypergraph(n, k, tuple(e for e in itertools.combinations(range(n), k) if e[0] < s))


def gen_kpartite_extremal(k: int, n: int, t: int, minus: bool = False) -> Hypergraph:
    """K^{(k)}_{t,n}, optionally with its lexicographically first edge removed.

    Class ``c`` is ``[c*n, (c+1)*n)``; the small part is ``{0..t-1}`` of class 0 and
    the other ``n-t`` vertices of class 0 are isolated.
    """
    if not 1 <= t <= n - 1:
        raise ValueError(f"need 1 <= t <= n-1, got t={t}, n={n}")
    classes = [range(0, t)] + [range(c * n, (c + 1) * n) for c in range(1, k)]
    edges = list(itertools.product(*classes))
    if minus:
        edges = edges[1:]
    return Hypergraph(k * n, k, tuple(edges))


def gen_random(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """Each k-set independently with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return Hypergraph(n, k, tuple(e for e in itertools.combinations(range(n), k) if rng.random() < p))


def gen_random_tripartite(sizes: Sequence[int], p: float, seed: int) -> Hypergraph:
    """Random 3-partite 3-graph: parts are consecutive blocks, crossing triples kept w.p. ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    offs = [0, sizes[0], sizes[0] + sizes[1]]
    parts = [range(offs[i], offs[i] + sizes[i]) for i in range(3)]
    edges = [e for e in itertools.product(*parts) if rng.random() < p]
    return Hypergraph(sum(sizes), 3, tuple(edges))


def conjecture_terms(n: int, s: int, k: int = 3, b: int = 2) -> tuple[int, int]:
    """(clique term, cover term) of the edge bound."""
    core = clique_order(s, Pattern(k, b))
    if n < core:
        raise ValueError(f"n={n} is below the threshold {core}")
    return comb(core, k), comb(n, k) - comb(n - s, k)


def conjecture_bound(n: int, s: int, k: int = 3, b: int = 2) -> int:
    """Exact max-term of the bound; the additive o(n^k) slack is not included."""
    return max(conjecture_terms(n, s, k, b))


@dataclass(frozen=True)
class Partition:
    exceptional: tuple[int, ...]
    clusters: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.clusters)

    @property
    def m(self) -> int:
        return len(self.clusters[0]) if self.clusters else 0

    def validate(self, n: int) -> None:
        seen: set[int] = set(self.exceptional)
        if len(seen) != len(self.exceptional):
            raise ValueError("exceptional set repeats a vertex")
        for i, c in enumerate(self.clusters):
            if len(c) != self.m:
                raise ValueError(f"cluster {i} has size {len(c)}, expected {self.m}")
            if seen & set(c) or len(set(c)) != len(c):
                raise ValueError(f"cluster {i} overlaps an earlier part")
            seen |= set(c)
        if seen != set(range(n)):
            raise ValueError(f"partition does not cover [0, {n}) exactly")


def equal_partition(n: int, t: int, seed: int | None = None) -> Partition:
    """``t`` clusters of size ``n // t``; the remainder is exceptional.

    With a seed the vertices are shuffled first, otherwise clusters are consecutive blocks.
    """
    order = list(range(n))
    if seed is not None:
        random.Random(seed).shuffle(order)
    m = n // t
    clusters = tuple(tuple(sorted(order[i * m:(i + 1) * m])) for i in range(t))
    return Partition(tuple(sorted(order[t * m:])), clusters)
