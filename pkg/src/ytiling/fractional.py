"""Fractional hom(Y)-tilings: verification, the LP relaxation, and integral embeddings.

A fractional tiling is a sparse map ``(vertex, edge index) -> Fraction``.  The per-edge
sorted-chain condition ``a <= b <= c <= 3a - b`` is checked in that form; the LP uses
the equivalent linear form ``sum <= 4 * each value``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .hypergraph import BlowUp, Hypergraph, Y32, blow_up
from .simplex import LPSolution, maximize
from .tiling import Tiling, verify_tiling

ZERO = Fraction(0)


@dataclass(frozen=True)
class FractionalTiling:
    weights: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    @classmethod
    def of(cls, entries: Mapping[tuple[int, int], object]) -> "FractionalTiling":
        return cls({key: Fraction(v) for key, v in sorted(entries.items()) if v != 0})

    @property
    def w(self) -> Fraction:
        return sum(self.weights.values(), ZERO)

    @property
    def h_min(self) -> Fraction | None:
        vals = [v for v in self.weights.values() if v != 0]
        return min(vals) if vals else None

    def load(self, v: int) -> Fraction:
        return sum((x for (u, _), x in self.weights.items() if u == v), ZERO)

    def on_edge(self, H: Hypergraph, e: int) -> tuple[Fraction, ...]:
        return tuple(self.weights.get((v, e), ZERO) for v in H.edges[e])

    def to_json(self) -> dict:
        hm = self.h_min
        return {
            "entries": [[v, e, str(x)] for (v, e), x in sorted(self.weights.items())],
            "w": str(self.w),
            "h_min": None if hm is None else str(hm),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FractionalTiling":
        return cls.of({(int(v), int(e)): Fraction(x) for v, e, x in obj["entries"]})


@dataclass(frozen=True)
class FractionalViolation:
    prop: int
    vertex: int | None
    edge: int | None
    detail: str


@dataclass(frozen=True)
class FractionalReport:
    violations: tuple[FractionalViolation, ...]
    w: Fraction
    h_min: Fraction | None

    @property
    def ok(self) -> bool:
        return not self.violations


def chain_holds(values: Iterable) -> bool:
    """Some labeling u, v, w gives h(u) <= h(v) <= h(w) <= 3 h(u) - h(v)."""
    return any(a <= b <= c <= 3 * a - b for a, b, c in itertools.permutations(values))


def linear_form_holds(values: Iterable) -> bool:
    vals = list(values)
    s = sum(vals)
    return all(s <= 4 * x for x in vals)


def verify_fractional(H: Hypergraph, h: FractionalTiling) -> FractionalReport:
    """Check support, per-vertex load and the per-edge chain, exactly."""
    if H.k != 3:
        raise NotImplementedError("fractional hom(Y)-tilings are defined for 3-graphs")
    bad: list[FractionalViolation] = []
    loads: dict[int, Fraction] = {}
    for (v, e), x in sorted(h.weights.items()):
        if not 0 <= e < H.m:
            bad.append(FractionalViolation(1, v, e, "edge index not in host"))
            continue
        if not 0 <= x <= 1:
            bad.append(FractionalViolation(0, v, e, f"value {x} outside [0, 1]"))
        if x != 0 and v not in H.edges[e]:
            bad.append(FractionalViolation(1, v, e, f"weight {x} on a non-incident pair"))
        loads[v] = loads.get(v, ZERO) + x
    for v, load in sorted(loads.items()):
        if load > 1:
            bad.append(FractionalViolation(2, v, None, f"load {load} exceeds 1"))
    for e in sorted({e for (_, e) in h.weights if 0 <= e < H.m}):
        vals = h.on_edge(H, e)
        a, b, c = sorted(vals)
        if c > 3 * a - b:
            worst = H.edges[e][vals.index(c)]
            bad.append(FractionalViolation(3, worst, e, f"sorted values {a}, {b}, {c}: {c} > 3*{a} - {b}"))
    return FractionalReport(tuple(bad), h.w, h.h_min)


@dataclass(frozen=True)
class LPResult:
    tiling: FractionalTiling
    value: Fraction
    solution: LPSolution
    c: tuple
    rows: tuple
    b: tuple


def lp_program(H: Hypergraph):
    """(c, rows, b, keys) for the linearized relaxation; variable ``3*e + i`` is h(edges[e][i], e)."""
    if H.k != 3:
        raise NotImplementedError("the fractional LP is defined for 3-graphs")
    keys = [(v, e) for e, edge in enumerate(H.edges) for v in edge]
    nv = len(keys)
    rows: list[dict[int, int]] = []
    b: list[int] = []
    for v in range(H.n):
        cols = [3 * e + edge.index(v) for e, edge in ((i, H.edges[i]) for i in H.incidence[v])]
        if cols:
            rows.append({j: 1 for j in cols})
            b.append(1)
    for e in range(H.m):
        for i in range(3):
            row = {3 * e + j: 1 for j in range(3)}
            row[3 * e + i] = -3
            rows.append(row)
            b.append(0)
    return [1] * nv, rows, b, keys


def lp_max_weight(H: Hypergraph, max_pivots: int = 1_000_000) -> LPResult:
    """Maximum-weight fractional hom(Y)-tiling, as an optimal basic solution."""
    c, rows, b, keys = lp_program(H)
    if not keys:
        sol = LPSolution(ZERO, (), (), 0)
        return LPResult(FractionalTiling(), ZERO, sol, (), (), ())
    sol = maximize(c, rows, b, max_pivots=max_pivots)
    h = FractionalTiling.of({keys[j]: x for j, x in enumerate(sol.x) if x})
    return LPResult(h, sol.value, sol, tuple(c), tuple(rows), tuple(b))


def from_integral(H: Hypergraph, tiling: Tiling) -> FractionalTiling:
    """Each copy: 1 on an edge's private vertex, 1/2 on each shared vertex."""
    bad = verify_tiling(H, tiling, Y32)
    if bad is not None:
        raise ValueError(f"invalid Y-tiling: {bad}")
    half = Fraction(1, 2)
    out: dict[tuple[int, int], Fraction] = {}
    for c in tiling.copies:
        shared = set(H.edges[c.edge_a]) & set(H.edges[c.edge_b])
        for e in (c.edge_a, c.edge_b):
            for v in H.edges[e]:
                out[(v, e)] = half if v in shared else Fraction(1)
    return FractionalTiling.of(out)


def from_blowup_tiling(R: Hypergraph, j: int, tiling: Tiling, blown: BlowUp | None = None) -> FractionalTiling:
    """Fold a Y-tiling of ``R{4^j}`` back onto ``R``.

    Every clone-edge of a copy contributes 1/4^j to its private clone's original and
    1/(2*4^j) to each shared clone's original, on the original edge.
    """
    blown = blown if blown is not None else blow_up(R, 4 ** j)
    if blown.factor != 4 ** j:
        raise ValueError(f"blow-up factor {blown.factor} is not 4^{j}")
    B = blown.graph
    bad = verify_tiling(B, tiling, Y32)
    if bad is not None:
        raise ValueError(f"tiling is invalid in the blow-up: {bad}")
    unit = Fraction(1, 4 ** j)
    out: dict[tuple[int, int], Fraction] = {}
    for c in tiling.copies:
        shared = set(B.edges[c.edge_a]) & set(B.edges[c.edge_b])
        for e in (c.edge_a, c.edge_b):
            E = blown.edge_origin[e]
            for v in B.edges[e]:
                key = (blown.vertex_origin[v], E)
                out[key] = out.get(key, ZERO) + (unit / 2 if v in shared else unit)
    return FractionalTiling.of(out)
