"""Sampled regularity checks, reduced graphs, and the constructive tiling pipeline.

No regularity lemma is run here.  Partitions come from the caller, regularity is
estimated by sampling (a rejection is sound, an acceptance is only sampled), and the
greedy triple tiling plus the fractional-to-integral conversion are run directly on
the host.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fractional import FractionalTiling, verify_fractional
from .hypergraph import Hypergraph, Partition, crossing_edges, density_triple
from .tiling import PatternCopy, Tiling


@dataclass(frozen=True)
class RegularityVerdict:
    accept: bool
    deviation: Fraction
    density: Fraction
    witness: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] | None


def _crossing_counter(H: Hypergraph, parts):
    """Edge list restricted to the triple, as vertex tuples ordered by part."""
    where = {}
    for j, A in enumerate(parts):
        for v in A:
            where[v] = j
    out = []
    for i in crossing_edges(H, *parts):
        e = sorted(H.edges[i], key=lambda v: where[v])
        out.append(tuple(e))
    return out


def regularity_estimate(H: Hypergraph, A1, A2, A3, delta: float, trials: int = 200,
                        seed: int = 0, sub_size: Sequence[int] | None = None) -> RegularityVerdict:
    """Largest observed |d(sub-triple) - d(triple)| over sampled sub-triples.

    Sub-parts have size ``ceil(delta*|A_i|)`` unless ``sub_size`` is given.  Besides the
    random samples, the lowest- and highest-degree sub-triples are always tried.
    """
    parts = [tuple(sorted(A)) for A in (A1, A2, A3)]
    if trials < 1:
        raise ValueError("need at least one trial")
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    floor_size = math.ceil(1 / delta)
    for j, A in enumerate(parts):
        if len(A) < floor_size:
            raise ValueError(f"part {j + 1} has {len(A)} vertices, fewer than ceil(1/delta)={floor_size}")
    whole = density_triple(H, *parts)
    sizes = list(sub_size) if sub_size is not None else [math.ceil(delta * len(A)) for A in parts]
    edges = _crossing_counter(H, parts)
    deg = {v: 0 for A in parts for v in A}
    for e in edges:
        for v in e:
            deg[v] += 1

    def density_of(subs):
        s0, s1, s2 = (set(x) for x in subs)
        hit = sum(1 for a, b, c in edges if a in s0 and b in s1 and c in s2)
        return Fraction(hit, len(s0) * len(s1) * len(s2))

    candidates = [
        tuple(tuple(sorted(sorted(A, key=lambda v: (deg[v], v))[:s])) for A, s in zip(parts, sizes)),
        tuple(tuple(sorted(sorted(A, key=lambda v: (-deg[v], v))[:s])) for A, s in zip(parts, sizes)),
    ]
    rng = random.Random(seed)
    for _ in range(trials):
        candidates.append(tuple(tuple(sorted(rng.sample(A, s))) for A, s in zip(parts, sizes)))
    worst = Fraction(0)
    witness = None
    for subs in candidates:
        dev = abs(density_of(subs) - whole)
        if dev > worst:
            worst, witness = dev, subs
    accept = worst <= Fraction(delta).limit_denominator(10 ** 9)
    return RegularityVerdict(accept, worst, whole, None if accept else witness)


@dataclass(frozen=True)
class ReducedGraph:
    host: Hypergraph
    partition: Partition
    delta: float
    d: float
    graph: Hypergraph
    """3-graph on cluster indices ``0..t-1``."""


def reduced_graph(H: Hypergraph, partition: Partition, delta: float, d: float,
                  trials: int = 200, seed: int = 0) -> ReducedGraph:
    """Cluster triple is an edge iff its density is at least ``d`` and sampling accepts it."""
    partition.validate(H.n)
    dd = Fraction(d).limit_denominator(10 ** 9)
    edges = []
    for idx, (i, j, k) in enumerate(itertools.combinations(range(partition.t), 3)):
        A = [partition.clusters[x] for x in (i, j, k)]
        if density_triple(H, *A) < dd:
            continue
        if regularity_estimate(H, *A, delta, trials, seed + idx).accept:
            edges.append((i, j, k))
    return ReducedGraph(H, partition, delta, d, Hypergraph(partition.t, 3, tuple(edges)))


@dataclass(frozen=True)
class TripleSplit:
    x1: Fraction
    x2: Fraction
    x3: Fraction

    @classmethod
    def of(cls, n1: int, n2: int, n3: int) -> "TripleSplit":
        return cls(Fraction(3 * n1 - n2 - n3, 4), Fraction(3 * n2 - n1 - n3, 4), Fraction(3 * n3 - n1 - n2, 4))

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.x1, self.x2, self.x3


@dataclass(frozen=True)
class TripleTilingResult:
    tiling: Tiling
    split: TripleSplit
    parts: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    doubled: tuple[int, ...]
    """Index into ``parts`` of the part each copy meets twice."""
    complete: bool

    @property
    def covered(self) -> int:
        return 4 * self.tiling.size


def greedy_triple_tiling(H: Hypergraph, V1, V2, V3, delta: float, exhaust: bool = True) -> TripleTilingResult:
    """Greedy Y-tiling of a dense triple, balancing how often each part is hit twice.

    Parts are reordered by size.  ``floor(x1)`` copies are taken with two vertices in the
    smallest part, then ``floor(x2)`` in the middle one, then copies doubling the
    largest part: until fewer than ``2*delta*|V3|`` of its vertices remain, or, with
    ``exhaust``, until no further copy exists.  ``complete`` is False when a phase fell
    short of its quota.
    """
    parts = sorted((tuple(sorted(A)) for A in (V1, V2, V3)), key=len)
    n1, n2, n3 = (len(A) for A in parts)
    if n1 == 0 or n3 > 3 * n1 - n2:
        raise ValueError(f"part sizes {n1} <= {n2} <= {n3} violate |V3| <= 3|V1| - |V2|")
    split = TripleSplit.of(n1, n2, n3)
    if len(set().union(*parts)) != n1 + n2 + n3:
        raise ValueError("parts must be disjoint")
    where = [-1] * H.n
    for j, A in enumerate(parts):
        for v in A:
            where[v] = j
    crossing = []
    for e in H.edges:
        slots = [None, None, None]
        for v in e:
            if where[v] >= 0:
                slots[where[v]] = v
        if None not in slots:
            crossing.append(slots)
    links: dict[int, dict] = {}

    def link(p):
        # doubled part p: (vertex of lower other part, vertex of higher other part) -> thirds in p
        if p not in links:
            q, r = (x for x in range(3) if x != p)
            table: dict[tuple[int, int], list[int]] = {}
            for e in crossing:
                table.setdefault((e[q], e[r]), []).append(e[p])
            links[p] = {key: sorted(table[key]) for key in sorted(table)}
        return links[p]

    remaining = [set(A) for A in parts]
    copies: list[PatternCopy] = []
    doubled: list[int] = []
    complete = True

    def take(p) -> bool:
        q, r = (x for x in range(3) if x != p)
        for (u, w), thirds in link(p).items():
            if u not in remaining[q] or w not in remaining[r]:
                continue
            free = [x for x in thirds if x in remaining[p]]
            if len(free) >= 2:
                a, b = free[0], free[1]
                ea = H.edge_index[tuple(sorted((a, u, w)))]
                eb = H.edge_index[tuple(sorted((b, u, w)))]
                copies.append(PatternCopy.of(H, ea, eb))
                doubled.append(p)
                for x in (a, b):
                    remaining[p].discard(x)
                remaining[q].discard(u)
                remaining[r].discard(w)
                return True
        return False

    for p, quota in ((0, math.floor(split.x1)), (1, math.floor(split.x2))):
        for _ in range(quota):
            if not take(p):
                complete = False
                break
    stop_below = 2 * delta * n3
    while exhaust or len(remaining[2]) >= stop_below:
        if len(remaining[2]) < 2 or not take(2):
            if len(remaining[2]) >= stop_below:
                complete = False
            break
    return TripleTilingResult(Tiling(tuple(copies)), split, tuple(parts), tuple(doubled), complete)


@dataclass(frozen=True)
class ConversionResult:
    tiling: Tiling
    covered: int
    target: Fraction
    """``(1 - 4*delta) * w(h) * m``."""
    pieces: dict


def fractional_to_integral(H: Hypergraph, partition: Partition, R: ReducedGraph, h: FractionalTiling,
                           delta: float | None = None) -> ConversionResult:
    """Integral Y-tiling of the host from a fractional tiling of the reduced graph.

    Cluster ``V_i`` is cut, in reduced-edge order, into consecutive pieces of size
    ``floor(h(i, e) * m)``; each reduced edge's three pieces get a greedy triple tiling.
    If rounding breaks the size condition, the largest piece is trimmed.
    """
    delta = R.delta if delta is None else delta
    rep = verify_fractional(R.graph, h)
    if not rep.ok:
        raise ValueError(f"not a fractional hom(Y)-tiling: {rep.violations[0]}")
    m = partition.m
    cursor = [0] * partition.t
    pieces: dict[int, tuple[tuple[int, ...], ...]] = {}
    for e, edge in enumerate(R.graph.edges):
        vals = h.on_edge(R.graph, e)
        if not any(vals):
            continue
        sub = []
        for i, x in zip(edge, vals):
            size = math.floor(x * m)
            cluster = partition.clusters[i]
            if cursor[i] + size > len(cluster):
                raise ValueError(f"cluster {i} over-subscribed by the fractional tiling")
            sub.append(cluster[cursor[i]:cursor[i] + size])
            cursor[i] += size
        pieces[e] = tuple(sub)
    copies: list[PatternCopy] = []
    for e, sub in pieces.items():
        parts = sorted(sub, key=len)
        if not parts[0]:
            continue
        cap = 3 * len(parts[0]) - len(parts[1])
        if len(parts[2]) > cap:
            parts[2] = parts[2][:cap]
        copies.extend(greedy_triple_tiling(H, *parts, delta).tiling.copies)
    tiling = Tiling(tuple(copies))
    return ConversionResult(tiling, 4 * tiling.size, (1 - Fraction(delta).limit_denominator(10 ** 9) * 4) * h.w * m, pieces)
