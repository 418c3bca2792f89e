"""Combinatorial subroutines of the stability argument, made executable.

All of the epsilon-style thresholds are explicit absolute integers here (``threshold``,
``tau``, ``prune_threshold``), so every run is reproducible at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .hypergraph import Hypergraph, Y32, degree_into_set, induced
from .kernels import DEFAULT_BUDGET
from .tiling import MixedTiling, PatternCopy, Tiling, enumerate_copies, max_mixed_tiling_exact, verify_tiling

# reference bounds on f(x_T) by range of x_T
TABLE_BOUNDS = ((0, 0, 64), (1, 10, 52), (11, 14, 48), (15, 16, 46), (17, 24, 37))


def table_bound(x: int) -> int | None:
    for lo, hi, bound in TABLE_BOUNDS:
        if lo <= x <= hi:
            return bound
    return None


def _block(c) -> tuple[int, ...]:
    return tuple(c.footprint) if isinstance(c, PatternCopy) else tuple(sorted(c))


# ---------------------------------------------------------------------------
# construction of R


@dataclass(frozen=True)
class RConstruction:
    R: tuple[int, ...]
    W: frozenset[int]
    ordered_tiling: Tiling
    t1: int
    t2: int
    threshold: int

    @property
    def remaining(self) -> tuple[PatternCopy, ...]:
        return self.ordered_tiling.copies[self.t1:]


def _grow(H: Hypergraph, W: set[int], remaining: list[PatternCopy], threshold: int):
    moved: list[tuple[PatternCopy, int]] = []
    while True:
        hit = None
        for ci, c in enumerate(remaining):
            for v in c.footprint:
                if degree_into_set(H, v, W) >= threshold:
                    hit = (ci, v)
                    break
            if hit:
                break
        if hit is None:
            return moved
        ci, v = hit
        c = remaining.pop(ci)
        moved.append((c, v))
        W.update(u for u in c.footprint if u != v)


def construct_R(H: Hypergraph, tiling: Tiling, U: Iterable[int], threshold: int) -> RConstruction:
    """Move copies with a high-degree vertex into R/W until none is left.

    Each step takes the smallest copy index (in the input order), then the smallest
    vertex of that copy, whose degree into the current ``W`` reaches ``threshold``.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    bad = verify_tiling(H, tiling, Y32)
    if bad is not None:
        raise ValueError(f"invalid tiling: {bad}")
    U = set(U)
    uncovered = set(range(H.n)) - tiling.vertices()
    if U != uncovered:
        raise ValueError(f"U must be the {len(uncovered)} vertices left uncovered by the tiling")
    W = set(U)
    remaining = list(tiling.copies)
    moved = _grow(H, W, remaining, threshold)
    ordered = Tiling(tuple(c for c, _ in moved) + tuple(remaining))
    return RConstruction(tuple(v for _, v in moved), frozenset(W), ordered, len(moved), len(remaining), threshold)


def extend_R(H: Hypergraph, rc: RConstruction) -> int:
    """Number of further moves the loop would make from ``rc``'s final state (0 at a fixed point)."""
    return len(_grow(H, set(rc.W), list(rc.remaining), rc.threshold))


def r_invariant_violations(H: Hypergraph, rc: RConstruction, tiling: Tiling, U: Iterable[int]) -> list[str]:
    out = []
    if rc.t1 + rc.t2 != tiling.size:
        out.append(f"t1 + t2 = {rc.t1 + rc.t2} but the tiling has {tiling.size} copies")
    if set(rc.ordered_tiling.copies) != set(tiling.copies):
        out.append("ordered tiling is not a relabeling of the input")
    if len(rc.R) != rc.t1:
        out.append("|R| differs from t1")
    expect = set(U)
    for c, v in zip(rc.ordered_tiling.copies[:rc.t1], rc.R):
        if v not in c.footprint:
            out.append(f"R vertex {v} is not in its copy")
        expect.update(u for u in c.footprint if u != v)
    if expect != set(rc.W):
        out.append("W differs from U plus the moved copies minus R")
    for c in rc.remaining:
        for v in c.footprint:
            if degree_into_set(H, v, rc.W) >= rc.threshold:
                out.append(f"vertex {v} of a remaining copy meets the threshold")
    return out


def y_free_check(H: Hypergraph, S: Iterable[int]) -> PatternCopy | None:
    """A copy of Y inside ``S`` (in host edge indices), or None."""
    sub, labels = induced(H, S)
    if sub.n < 4:
        return None
    for c in enumerate_copies(sub, Y32):
        a = tuple(labels[v] for v in sub.edges[c.edge_a])
        b = tuple(labels[v] for v in sub.edges[c.edge_b])
        return PatternCopy.of(H, H.edge_index[a], H.edge_index[b])
    return None


# ---------------------------------------------------------------------------
# link graphs and Koenig


@dataclass(frozen=True)
class LinkGraph:
    blocks: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    tau: int

    @property
    def size(self) -> int:
        return len(self.edges)


def _codegree_into(H: Hypergraph, u: int, v: int, W: set[int]) -> int:
    return sum(1 for i in H.incidence[u] if v in H.edges[i]
               and next(x for x in H.edges[i] if x != u and x != v) in W)


def link_graph(H: Hypergraph, W: Iterable[int], copy_p, copy_q, tau: int) -> LinkGraph:
    """Bipartite graph on two 4-vertex blocks: {u, v} is an edge iff at least ``tau``
    vertices of ``W`` complete it to an edge of ``H``."""
    P, Q = _block(copy_p), _block(copy_q)
    W = set(W)
    if set(P) & set(Q) or (set(P) | set(Q)) & W:
        raise ValueError("copies and W must be pairwise disjoint")
    edges = tuple((u, v) for u in P for v in Q if _codegree_into(H, u, v, W) >= tau)
    return LinkGraph((P, Q), edges, tau)


@dataclass(frozen=True)
class MatchingCover:
    matching: tuple[tuple[int, int], ...]
    cover: tuple[int, ...]


def bipartite_matching_cover(left: Sequence[int], right: Sequence[int],
                             edges: Iterable[tuple[int, int]]) -> MatchingCover:
    """Maximum matching by augmenting paths and a minimum vertex cover from it."""
    L, Rt = list(dict.fromkeys(left)), list(dict.fromkeys(right))
    if set(L) & set(Rt):
        raise ValueError("sides must be disjoint")
    Ls, Rs = set(L), set(Rt)
    adj: dict[int, list[int]] = {u: [] for u in L}
    for u, v in edges:
        if u in Rs and v in Ls:
            u, v = v, u
        if not (u in Ls and v in Rs):
            raise ValueError(f"edge {(u, v)} does not cross the bipartition")
        if v not in adj[u]:
            adj[u].append(v)
    for u in L:
        adj[u].sort()
    mate_r: dict[int, int] = {}

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in mate_r or augment(mate_r[v], seen):
                mate_r[v] = u
                return True
        return False

    for u in L:
        augment(u, set())
    matched_l = set(mate_r.values())
    # alternating reachability from free left vertices
    zl = {u for u in L if u not in matched_l}
    zr: set[int] = set()
    stack = list(zl)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in zr:
                zr.add(v)
                w = mate_r.get(v)
                if w is not None and w not in zl:
                    zl.add(w)
                    stack.append(w)
    cover = tuple(sorted([u for u in L if u not in zl] + [v for v in Rt if v in zr]))
    matching = tuple(sorted((u, v) for v, u in mate_r.items()))
    return MatchingCover(matching, cover)


def _same_side_pair_cover(lg: LinkGraph) -> tuple[int, int] | None:
    for side in lg.blocks:
        for pair in itertools.combinations(side, 2):
            if all(u in pair or v in pair for u, v in lg.edges):
                return pair
    return None


@dataclass(frozen=True)
class TripleProfile:
    blocks: tuple[tuple[int, ...], ...]
    links: tuple[LinkGraph, ...]
    """Raw link graphs for block pairs (0,1), (0,2), (1,2)."""
    d_type: tuple[bool, ...]
    improvable: tuple[bool, ...]
    """Pairs whose raw link graph has a matching of size at least 3."""
    G_T: tuple[tuple[int, int], ...]
    Q_T: tuple[tuple[int, int, int], ...]
    crossing_cover: tuple[int, int, int] | None
    x_T: int = field(init=False)
    f: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "x_T", len(self.G_T))
        object.__setattr__(self, "f", len(self.Q_T))

    @property
    def reference_bound(self) -> int | None:
        return table_bound(self.x_T)


def triple_profile(H: Hypergraph, W: Iterable[int], copy_i, copy_j, copy_k, tau: int) -> TripleProfile:
    blocks = (_block(copy_i), _block(copy_j), _block(copy_k))
    if len(set().union(*blocks)) != sum(len(b) for b in blocks):
        raise ValueError("the three copies must be disjoint")
    W = set(W)
    links, d_type, improvable = [], [], []
    G_T: list[tuple[int, int]] = []
    for p, q in ((0, 1), (0, 2), (1, 2)):
        lg = link_graph(H, W, blocks[p], blocks[q], tau)
        mc = bipartite_matching_cover(blocks[p], blocks[q], lg.edges)
        is_d = lg.size >= 6 and _same_side_pair_cover(lg) is not None
        links.append(lg)
        d_type.append(is_d)
        improvable.append(len(mc.matching) >= 3)
        if not is_d:
            G_T.extend(lg.edges)
    where = {v: j for j, b in enumerate(blocks) for v in b}
    Q_T = []
    for e in H.edges:
        if all(v in where for v in e) and {where[v] for v in e} == {0, 1, 2}:
            Q_T.append(e)
    cover = None
    for a, b, c in itertools.product(*blocks):
        if all(u in (a, b, c) or v in (a, b, c) for u, v in G_T):
            cover = (a, b, c)
            break
    return TripleProfile(blocks, tuple(links), tuple(d_type), tuple(improvable), tuple(G_T), tuple(Q_T), cover)


@dataclass(frozen=True)
class ImprovementResult:
    tiling: MixedTiling | None
    coverage: int
    exhausted: bool


def improvement_search(H: Hypergraph, W: Iterable[int], triple: Sequence, budget: int = DEFAULT_BUDGET,
                       w_cap: int = 12, target: int = 13) -> ImprovementResult:
    """Exact search for a {Y,E}-tiling of H[V(T) + W'] covering at least ``target`` vertices,
    where W' is the ``w_cap`` smallest vertices of ``W``."""
    blocks = [_block(c) for c in triple]
    core = set().union(*blocks)
    if len(core) != sum(len(b) for b in blocks):
        raise ValueError("the copies must be disjoint")
    W = sorted(set(W))
    if core & set(W):
        raise ValueError("W must avoid the copies")
    S = sorted(core | set(W[:w_cap]))
    sub, labels = induced(H, S)
    res = max_mixed_tiling_exact(sub, Y32, budget, target=target)
    if res.coverage < target:
        return ImprovementResult(None, res.coverage, not res.optimal)

    def host(e):
        return H.edge_index[tuple(labels[v] for v in sub.edges[e])]

    t = res.tiling
    mixed = MixedTiling(
        tuple(sorted((PatternCopy.of(H, host(c.edge_a), host(c.edge_b)) for c in t.copies), key=lambda c: c.footprint)),
        tuple(sorted(host(e) for e in t.singles)),
    )
    return ImprovementResult(mixed, res.coverage, not res.optimal)


# ---------------------------------------------------------------------------
# digraphs and ordered 3-graphs


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {(u, v)} outside [0, {n})")
        return cls(n, arcs)

    def out(self, u: int) -> set[int]:
        return {v for a, v in self.arcs if a == u}


def find_k23_plus(D: Digraph) -> tuple[tuple[int, int], tuple[int, int, int]] | None:
    """Two sources with three common out-neighbours: (sources, sinks), lexicographically first."""
    outs = [D.out(u) for u in range(D.n)]
    for a, b in itertools.combinations(range(D.n), 2):
        common = sorted((outs[a] & outs[b]) - {a, b})
        if len(common) >= 3:
            return (a, b), tuple(common[:3])
    return None


@dataclass(frozen=True)
class VTilingResult:
    copies: tuple[tuple[tuple[int, int, int], tuple[int, int, int]], ...]
    target: int
    pruned: int

    @property
    def short(self) -> bool:
        return len(self.copies) < self.target


def ordered_v_tiling(F: Iterable[Sequence[int]], target: int, prune_threshold: int = 0) -> VTilingResult:
    """Greedy vertex-disjoint pairs of ordered triples meeting exactly in their third vertex.

    Vertices that are third in at least one but at most ``prune_threshold`` edges lose
    those edges first, repeatedly.
    """
    edges = []
    for e in F:
        e = tuple(int(x) for x in e)
        if len(e) != 3 or len(set(e)) != 3:
            raise ValueError(f"ordered edge {e} must have three distinct vertices")
        edges.append(e)
    edges = list(dict.fromkeys(edges))
    total = len(edges)
    while prune_threshold > 0:
        count: dict[int, int] = {}
        for e in edges:
            count[e[2]] = count.get(e[2], 0) + 1
        weak = {v for v, c in count.items() if c <= prune_threshold}
        if not weak:
            break
        edges = [e for e in edges if e[2] not in weak]
    by_third: dict[int, list[tuple[int, int, int]]] = {}
    for e in edges:
        by_third.setdefault(e[2], []).append(e)
    used: set[int] = set()
    copies = []
    for e in edges:
        if len(copies) >= target:
            break
        if used & set(e):
            continue
        for g in by_third[e[2]]:
            if g != e and not used & {g[0], g[1]} and not {g[0], g[1]} & {e[0], e[1]}:
                copies.append((e, g))
                used.update(e)
                used.update(g[:2])
                break
    return VTilingResult(tuple(copies), target, total - len(edges))
