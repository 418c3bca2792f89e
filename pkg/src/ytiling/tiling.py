"""Y_{k,b}-copies, exact and heuristic maximum tilings, and extremal Y-free counts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .hypergraph import Hypergraph, Pattern, Y32
from .kernels import DEFAULT_BUDGET, max_weight_packing


@dataclass(frozen=True, order=True)
class PatternCopy:
    edge_a: int
    edge_b: int
    footprint: tuple[int, ...] = field(compare=False)

    @classmethod
    def of(cls, H: Hypergraph, a: int, b: int) -> "PatternCopy":
        a, b = min(a, b), max(a, b)
        return cls(a, b, tuple(sorted(set(H.edges[a]) | set(H.edges[b]))))


@dataclass(frozen=True)
class Tiling:
    copies: tuple[PatternCopy, ...] = ()

    @property
    def size(self) -> int:
        return len(self.copies)

    def vertices(self) -> set[int]:
        return {v for c in self.copies for v in c.footprint}

    def coverage(self, H: Hypergraph | None = None) -> int:
        return sum(len(c.footprint) for c in self.copies)


@dataclass(frozen=True)
class MixedTiling:
    copies: tuple[PatternCopy, ...] = ()
    singles: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.copies)

    def vertices(self, H: Hypergraph) -> set[int]:
        out = {v for c in self.copies for v in c.footprint}
        for i in self.singles:
            out.update(H.edges[i])
        return out

    def coverage(self, H: Hypergraph) -> int:
        return sum(len(c.footprint) for c in self.copies) + H.k * len(self.singles)


@dataclass(frozen=True)
class SolveResult:
    tiling: Tiling | MixedTiling
    coverage: int
    optimal: bool
    nodes: int

    @property
    def size(self) -> int:
        return self.tiling.size

    def to_json(self) -> dict:
        singles = list(self.tiling.singles) if isinstance(self.tiling, MixedTiling) else []
        return {
            "size": self.size,
            "coverage": self.coverage,
            "copies": [[c.edge_a, c.edge_b] for c in self.tiling.copies],
            "singles": singles,
            "optimal": self.optimal,
            "nodes": self.nodes,
        }


def enumerate_copies(H: Hypergraph, pattern: Pattern = Y32) -> list[PatternCopy]:
    """All unordered edge pairs meeting in exactly ``pattern.b`` vertices, sorted by edge index."""
    if H.k != pattern.k:
        raise ValueError(f"pattern uniformity {pattern.k} does not match hypergraph k={H.k}")
    b = pattern.b
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, e in enumerate(H.edges):
        for sub in itertools.combinations(e, b):
            groups.setdefault(sub, []).append(i)
    pairs = set()
    for members in groups.values():
        for a, c in itertools.combinations(members, 2):
            if len(set(H.edges[a]) & set(H.edges[c])) == b:
                pairs.add((a, c))
    return [PatternCopy.of(H, a, c) for a, c in sorted(pairs)]


def _footprint_reps(copies: Sequence[PatternCopy]) -> list[PatternCopy]:
    """One copy per footprint (the first by edge order), sorted by footprint."""
    reps: dict[tuple[int, ...], PatternCopy] = {}
    for c in copies:
        reps.setdefault(c.footprint, c)
    return [reps[f] for f in sorted(reps)]


def _compact(items: Sequence[tuple[int, ...]]) -> list[int]:
    """Bitmasks over the vertices that actually occur, relabeled densely in order."""
    verts = sorted({v for it in items for v in it})
    pos = {v: i for i, v in enumerate(verts)}
    return [sum(1 << pos[v] for v in it) for it in items]


def greedy_tiling(H: Hypergraph, pattern: Pattern = Y32, copies: Sequence[PatternCopy] | None = None) -> Tiling:
    """Repeatedly take the first copy (footprint order) disjoint from those chosen."""
    copies = _footprint_reps(enumerate_copies(H, pattern) if copies is None else copies)
    used: set[int] = set()
    chosen = []
    for c in copies:
        if used.isdisjoint(c.footprint):
            chosen.append(c)
            used.update(c.footprint)
    return Tiling(tuple(chosen))


def max_tiling_exact(H: Hypergraph, pattern: Pattern = Y32, budget: int = DEFAULT_BUDGET,
                     backend: str | None = None) -> SolveResult:
    """Maximum-cardinality Y-tiling by branch-and-bound over footprints.

    ``optimal`` is False only when the node budget ran out; the tiling is then the
    best found.
    """
    reps = _footprint_reps(enumerate_copies(H, pattern))
    greedy = greedy_tiling(H, pattern, reps)
    if not reps:
        return SolveResult(Tiling(), 0, True, 0)
    index = {c: i for i, c in enumerate(reps)}
    res = max_weight_packing(
        _compact([c.footprint for c in reps]), [1] * len(reps), budget,
        incumbent=(greedy.size, tuple(index[c] for c in greedy.copies)), backend=backend,
    )
    tiling = Tiling(tuple(sorted((reps[i] for i in res.choice), key=lambda c: c.footprint)))
    return SolveResult(tiling, tiling.coverage(), not res.exhausted, res.nodes)


def _mixed_items(H: Hypergraph, pattern: Pattern):
    reps = _footprint_reps(enumerate_copies(H, pattern))
    items: list[tuple[str, object, tuple[int, ...]]] = [("copy", c, c.footprint) for c in reps]
    items += [("edge", i, e) for i, e in enumerate(H.edges)]
    return items


def max_mixed_tiling_exact(H: Hypergraph, pattern: Pattern = Y32, budget: int = DEFAULT_BUDGET,
                           target: int | None = None, backend: str | None = None) -> SolveResult:
    """Vertex-disjoint copies and single edges covering the most vertices.

    Ties in coverage go to fewer components.  With ``target`` the search stops as soon
    as a tiling covering at least ``target`` vertices is found (``optimal`` then means
    only that the budget was not exhausted).
    """
    items = _mixed_items(H, pattern)
    if not items:
        return SolveResult(MixedTiling(), 0, True, 0)
    scale = H.n + 1
    weights = [len(fp) * scale - 1 for _, _, fp in items]
    goal = None if target is None else target * scale - H.n
    # greedy incumbent: copies first, then edges, first fit
    used: set[int] = set()
    inc = []
    for i, (_, _, fp) in enumerate(items):
        if used.isdisjoint(fp):
            inc.append(i)
            used.update(fp)
    res = max_weight_packing(
        _compact([fp for _, _, fp in items]), weights, budget, target=goal,
        incumbent=(sum(weights[i] for i in inc), tuple(inc)), backend=backend,
    )
    chosen = [items[i] for i in res.choice]
    tiling = MixedTiling(
        tuple(sorted((obj for kind, obj, _ in chosen if kind == "copy"), key=lambda c: c.footprint)),
        tuple(sorted(obj for kind, obj, _ in chosen if kind == "edge")),
    )
    return SolveResult(tiling, tiling.coverage(H), not res.exhausted, res.nodes)


def local_search_improve(H: Hypergraph, tiling: Tiling, radius: int = 1, pattern: Pattern = Y32,
                         budget: int = DEFAULT_BUDGET) -> Tiling:
    """Hill-climb with remove-r / add-(r+1) swaps for r = 0..radius."""
    bad = verify_tiling(H, tiling, pattern)
    if bad is not None:
        raise ValueError(f"input tiling is invalid: {bad}")
    reps = _footprint_reps(enumerate_copies(H, pattern))
    current = list(tiling.copies)
    improved = True
    while improved:
        improved = False
        covered = {v for c in current for v in c.footprint}
        for r in range(radius + 1):
            for out in itertools.combinations(range(len(current)), r):
                freed = {v for i in out for v in current[i].footprint}
                room = [c for c in reps if all(v in freed or v not in covered for v in c.footprint)]
                if len(room) < r + 1:
                    continue
                res = max_weight_packing(_compact([c.footprint for c in room]), [1] * len(room),
                                         budget, target=r + 1)
                if res.value >= r + 1:
                    keep = [c for i, c in enumerate(current) if i not in out]
                    current = keep + [room[i] for i in res.choice]
                    improved = True
                    break
            if improved:
                break
    return Tiling(tuple(sorted(current, key=lambda c: c.footprint)))


@dataclass(frozen=True)
class TilingViolation:
    kind: str
    indices: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.indices}: {self.detail}"


def verify_tiling(H: Hypergraph, tiling: Tiling | MixedTiling, pattern: Pattern = Y32) -> TilingViolation | None:
    """First violated condition, or None if the (mixed) tiling is valid in ``H``.

    Copies are indexed ``0..c-1`` and single edges continue as ``c, c+1, ...``.
    """
    blocks: list[tuple[int, ...]] = []
    for i, c in enumerate(tiling.copies):
        for e in (c.edge_a, c.edge_b):
            if not 0 <= e < H.m:
                return TilingViolation("edge", (i,), f"edge index {e} not in host")
        if c.edge_a == c.edge_b:
            return TilingViolation("overlap", (i,), "copy uses the same edge twice")
        ea, eb = set(H.edges[c.edge_a]), set(H.edges[c.edge_b])
        if len(ea & eb) != pattern.b:
            return TilingViolation("overlap", (i,), f"edges share {len(ea & eb)} vertices, need {pattern.b}")
        if tuple(sorted(ea | eb)) != tuple(c.footprint):
            return TilingViolation("footprint", (i,), "footprint differs from the edge union")
        blocks.append(tuple(sorted(ea | eb)))
    for j in getattr(tiling, "singles", ()):
        if not 0 <= j < H.m:
            return TilingViolation("edge", (len(blocks),), f"edge index {j} not in host")
        blocks.append(H.edges[j])
    owner: dict[int, int] = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            if v in owner:
                return TilingViolation("disjoint", (owner[v], i), f"both use vertex {v}")
            owner[v] = i
    return None


@dataclass(frozen=True)
class FreeResult:
    edges: int
    witness: Hypergraph
    optimal: bool
    nodes: int


def _is_pattern_free(edges: Sequence[tuple[int, ...]], b: int) -> bool:
    return all(len(set(x) & set(y)) != b for x, y in itertools.combinations(edges, 2))


def max_pattern_free_edges(n: int, pattern: Pattern = Y32, budget: int = DEFAULT_BUDGET,
                           backend: str | None = None) -> FreeResult:
    """Largest k-graph on ``n`` vertices with no two edges meeting in exactly b vertices.

    For b = k-1 this is a packing of k-sets by their (k-1)-subsets, solved with the
    packing kernel (each triple uses three vertex pairs).  Other b fall back to a plain
    include/exclude search.
    """
    k, b = pattern.k, pattern.b
    cands = list(itertools.combinations(range(n), k))
    if not cands:
        return FreeResult(0, Hypergraph(n, k, ()), True, 0)
    if b == k - 1:
        subs = {s: i for i, s in enumerate(itertools.combinations(range(n), k - 1))}
        masks = [sum(1 << subs[s] for s in itertools.combinations(e, k - 1)) for e in cands]
        used = 0
        inc = []
        for i, x in enumerate(masks):
            if not x & used:
                inc.append(i)
                used |= x
        res = max_weight_packing(masks, [1] * len(masks), budget, incumbent=(len(inc), tuple(inc)),
                                 backend=backend)
        chosen = sorted(cands[i] for i in res.choice)
        return FreeResult(len(chosen), Hypergraph(n, k, tuple(chosen)), not res.exhausted, res.nodes)
    return _free_search_generic(n, k, b, cands, budget)


def _free_search_generic(n, k, b, cands, budget) -> FreeResult:
    conflict = [0] * len(cands)
    for i, j in itertools.combinations(range(len(cands)), 2):
        if len(set(cands[i]) & set(cands[j])) == b:
            conflict[i] |= 1 << j
            conflict[j] |= 1 << i
    best: list[int] = []
    nodes = 0
    exhausted = False

    def rec(i, chosen, banned):
        nonlocal best, nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if len(chosen) > len(best):
            best = list(chosen)
        free = sum(1 for j in range(i, len(cands)) if not banned >> j & 1)
        if len(chosen) + free <= len(best):
            return
        while i < len(cands) and banned >> i & 1:
            i += 1
        if i == len(cands):
            return
        chosen.append(i)
        rec(i + 1, chosen, banned | conflict[i])
        chosen.pop()
        if not exhausted:
            rec(i + 1, chosen, banned | (1 << i))

    rec(0, [], 0)
    edges = tuple(sorted(cands[i] for i in best))
    return FreeResult(len(edges), Hypergraph(n, k, edges), not exhausted, nodes)
