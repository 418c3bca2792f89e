"""Compiled vs pure-Python search kernels on the package's own workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends must return the same value and the same node count on every case;
the table shows best-of-``repeat`` wall time per backend.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time

from ytiling import kernels
from ytiling.facts import _cells, _matchings
from ytiling.hypergraph import gen_clique_plus_isolated, gen_cover_construction, gen_random
from ytiling.tiling import _compact, _footprint_reps, enumerate_copies


def packing_case(H):
    reps = _footprint_reps(enumerate_copies(H))
    return _compact([c.footprint for c in reps]), [1] * len(reps)


def free_case(n):
    subs = {s: i for i, s in enumerate(itertools.combinations(range(n), 2))}
    cands = list(itertools.combinations(range(n), 3))
    return [sum(1 << subs[s] for s in itertools.combinations(e, 2)) for e in cands], [1] * len(cands)


def y_copy_sets(n):
    """Vertex-cover form of the Y-free problem: hit every pair of triples sharing two vertices."""
    T = list(itertools.combinations(range(n), 3))
    return [(1 << i) | (1 << j) for i, j in itertools.combinations(range(len(T)), 2)
            if len(set(T[i]) & set(T[j])) == 2]


def cases():
    yield "pack cover(16,3)", "pack", packing_case(gen_cover_construction(16, 3))
    yield "pack clique(20,3)", "pack", packing_case(gen_clique_plus_isolated(20, 3))
    yield "pack random(12,0.5)", "pack", packing_case(gen_random(12, 3, 0.5, 1))
    yield "pack Y-free n=8", "pack", free_case(8)
    yield "pack Y-free n=9", "pack", free_case(9)
    yield "hit f0 (3,4)", "hit", _matchings(_cells((3, 3, 4)), 3)
    yield "hit 4-matchings K5,5", "hit", _matchings(_cells((5, 5)), 4)
    yield "hit Y-copies K7", "hit", y_copy_sets(7)


def run(kind, data, backend):
    if kind == "pack":
        masks, weights = data
        r = kernels.max_weight_packing(masks, weights, backend=backend)
        return r.value, r.nodes
    r = kernels.min_hitting_set(data, backend=backend)
    return len(r.choice), r.nodes


def timed(kind, data, backend, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = run(kind, data, backend)
        best = min(best, time.perf_counter() - t0)
    return out, best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernels unavailable; only the Python backend can run", file=sys.stderr)
        return 1
    print(f"{'case':24s} {'value':>6s} {'nodes':>9s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    status = 0
    for name, kind, data in cases():
        (pv, pn), pt = timed(kind, data, "python", args.repeat)
        (cv, cn), ct = timed(kind, data, "cython", args.repeat)
        flag = "" if (pv, pn) == (cv, cn) else "  MISMATCH"
        if flag:
            status = 1
        print(f"{name:24s} {pv:6d} {pn:9d} {pt:10.4f} {ct:10.4f} {pt / max(ct, 1e-9):7.1f}x{flag}")
    return status


if __name__ == "__main__":
    sys.exit(main())
