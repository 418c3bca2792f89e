"""Exact rational primal simplex for origin-feasible LPs.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` using a sparse tableau of
exact rationals (``gmpy2.mpq`` when installed, else :class:`fractions.Fraction`) and
Bland's rule.  Results are always returned as ``Fraction``.  Rows are dicts ``column -> value``;
slack of row ``i`` is column ``nvars + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

try:
    from gmpy2 import mpq as Q
except ImportError:  # exact either way, gmpy2 is only faster
    Q = Fraction


class SimplexBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    duals: tuple[Fraction, ...]
    pivots: int
    status: str = "optimal"


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def maximize(c: Sequence, rows: Sequence[Mapping[int, object]], b: Sequence,
             max_pivots: int = 1_000_000) -> LPSolution:
    nv = len(c)
    nr = len(rows)
    rhs = [Q(v) for v in b]
    if any(v < 0 for v in rhs):
        raise ValueError("right-hand side must be nonnegative (origin-feasible LPs only)")
    T: list[dict[int, Fraction]] = []
    col_rows: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        r = {j: Q(v) for j, v in row.items() if v != 0}
        r[nv + i] = Q(1)
        T.append(r)
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    # reduced costs; positive entry => improving column
    z: dict[int, Fraction] = {j: Q(v) for j, v in enumerate(c) if v != 0}
    obj = Q(0)
    basis = [nv + i for i in range(nr)]
    pivots = 0
    while True:
        enter = min((j for j, v in z.items() if v > 0), default=None)
        if enter is None:
            break
        leave = None
        best = None
        for i in col_rows.get(enter, ()):
            a = T[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best:
                    best, leave = key, i
        if leave is None:
            return LPSolution(Fraction(0), (), (), pivots, status="unbounded")
        pivots += 1
        if pivots > max_pivots:
            raise SimplexBudgetError(f"pivot budget {max_pivots} exhausted")
        # normalize pivot row
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            for j in prow:
                prow[j] /= piv
            rhs[leave] /= piv
        for i in list(col_rows[enter]):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            for j, v in prow.items():
                nvj = row.get(j, 0) - f * v
                if nvj:
                    if j not in row:
                        col_rows.setdefault(j, set()).add(i)
                    row[j] = nvj
                elif j in row:
                    del row[j]
                    col_rows[j].discard(i)
            rhs[i] -= f * rhs[leave]
        f = z.get(enter, 0)
        for j, v in prow.items():
            nz = z.get(j, 0) - f * v
            if nz:
                z[j] = nz
            else:
                z.pop(j, None)
        obj += f * rhs[leave]
        basis[leave] = enter
    x = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            x[var] = _frac(rhs[i])
    duals = tuple(_frac(-z.get(nv + i, Q(0))) for i in range(nr))
    return LPSolution(_frac(obj), tuple(x), duals, pivots)


def check_certificate(c, rows, b, sol: LPSolution) -> bool:
    """Exact primal/dual feasibility and zero duality gap."""
    nv = len(c)
    if any(v < 0 for v in sol.x) or any(y < 0 for y in sol.duals):
        return False
    for row, bi in zip(rows, b):
        if sum(Fraction(a) * sol.x[j] for j, a in row.items()) > bi:
            return False
    cols: list[Fraction] = [Fraction(0)] * nv
    for row, y in zip(rows, sol.duals):
        if y:
            for j, a in row.items():
                cols[j] += Fraction(a) * y
    if any(cols[j] < c[j] for j in range(nv)):
        return False
    primal = sum(Fraction(cj) * xj for cj, xj in zip(c, sol.x))
    dual = sum(Fraction(bi) * y for bi, y in zip(b, sol.duals))
    return primal == dual == sol.value
