"""``ytiling`` command line: generate instances, solve, run the LP, audit."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction
from math import comb

from . import formats
from .facts import check_fact_f0, check_fact_f11_f1
from .fractional import chain_holds, linear_form_holds, lp_max_weight, verify_fractional
from .hypergraph import (
    HypergraphError,
    Pattern,
    blow_up,
    complete,
    conjecture_terms,
    gen_clique_plus_isolated,
    gen_cover_construction,
    gen_kpartite_extremal,
    gen_random,
)
from .kernels import DEFAULT_BUDGET
from .procedures import y_free_check
from .simplex import check_certificate
from .tiling import (
    SolveResult,
    greedy_tiling,
    local_search_improve,
    max_mixed_tiling_exact,
    max_pattern_free_edges,
    max_tiling_exact,
)

FAMILIES = ("complete", "clique", "cover", "kpartite", "random", "blowup")
SUITES = ("f0", "f11f1", "frfu", "constructions", "linearization")

F0_PARAMS = ((2, 2), (2, 3), (3, 3), (3, 4))
F11_PARAMS = ((2, 3, 1), (3, 2, 1), (2, 4, 1), (2, 4, 2), (2, 4, 3))
FRFU_NS = (4, 5, 6, 7, 8)
LINEARIZATION_SAMPLES = 100_000


class CLIError(Exception):
    pass


def _echo(args, skip=("out", "timing", "func")) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _finish(args, report: dict, rows: list[dict], started: float) -> None:
    elapsed = time.perf_counter() - started
    if args.format == "csv":
        _emit(_csv(rows), args.out)
    else:
        if args.timing:
            report["wall_time"] = round(elapsed, 6)
        _emit(_dump(report), args.out)
    if not args.timing:
        print(f"wall time {elapsed:.3f}s", file=sys.stderr)


# ---------------------------------------------------------------------------
# gen


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise CLIError(f"--{name.replace('_', '-')} is required for family {args.family}")


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "complete":
        _need(args, "n")
        H = complete(args.n, args.k)
    elif fam == "clique":
        _need(args, "n", "s")
        H = gen_clique_plus_isolated(args.n, args.s, args.k, args.b)
    elif fam == "cover":
        _need(args, "n", "s")
        H = gen_cover_construction(args.n, args.s, args.k)
    elif fam == "kpartite":
        _need(args, "n", "t")
        H = gen_kpartite_extremal(args.k, args.n, args.t, args.minus)
    elif fam == "random":
        _need(args, "n", "p", "seed")
        H = gen_random(args.n, args.k, args.p, args.seed)
    else:
        _need(args, "input", "factor")
        H = blow_up(formats.read_hypergraph(args.input), args.factor).graph
    fmt = args.format if args.format in ("hg", "json") else None
    if args.format == "csv":
        raise CLIError("gen writes hg or json")
    if args.out:
        formats.write_hypergraph(H, args.out, fmt)
    else:
        sys.stdout.write(formats.dumps_json(H) if fmt == "json" else formats.dumps_hg(H))
    return 0


# ---------------------------------------------------------------------------
# solve / lp


def _solve(H, mode: str, pattern: Pattern, budget: int) -> SolveResult:
    if mode == "exact":
        return max_tiling_exact(H, pattern, budget)
    if mode == "mixed":
        return max_mixed_tiling_exact(H, pattern, budget)
    t = greedy_tiling(H, pattern)
    if mode == "local":
        t = local_search_improve(H, t, 1, pattern, budget)
    return SolveResult(t, t.coverage(), False, 0)


def cmd_solve(args) -> int:
    started = time.perf_counter()
    H = formats.read_hypergraph(args.file)
    pattern = Pattern.parse(args.pattern)
    res = _solve(H, args.mode, pattern, args.budget)
    report = {
        "command": "solve",
        "args": _echo(args),
        "seed": args.seed,
        "instance": formats.digest(H),
        "results": dict(res.to_json(), mode=args.mode, pattern=str(pattern)),
        "optimal": res.optimal,
    }
    rows = [{"mode": args.mode, "size": res.size, "coverage": res.coverage, "optimal": res.optimal,
             "nodes": res.nodes}]
    _finish(args, report, rows, started)
    return 0


def cmd_lp(args) -> int:
    started = time.perf_counter()
    H = formats.read_hypergraph(args.file)
    if H.k != 3:
        raise CLIError(f"the LP is defined for 3-graphs, file has k={H.k}")
    lp = lp_max_weight(H)
    cert = check_certificate(list(lp.c), list(lp.rows), list(lp.b), lp.solution) if lp.c else True
    verified = verify_fractional(H, lp.tiling).ok
    results = {
        "value": str(lp.value),
        "certificate_ok": cert,
        "verify_ok": verified,
        "pivots": lp.solution.pivots,
        "h": lp.tiling.to_json(),
    }
    ok = cert and verified
    if not args.no_exact:
        ex = max_tiling_exact(H, budget=args.budget)
        if ex.optimal:
            results["exact_size"] = ex.size
            results["lp_ge_4_exact"] = lp.value >= 4 * ex.size
            ok = ok and results["lp_ge_4_exact"]
    report = {"command": "lp", "args": _echo(args), "seed": args.seed, "instance": formats.digest(H),
              "results": results, "optimal": True, "pass": ok}
    rows = [{"value": results["value"], "certificate_ok": cert, "verify_ok": verified,
             "exact_size": results.get("exact_size", "")}]
    _finish(args, report, rows, started)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# audit


def _audit_f0() -> list[dict]:
    return [check_fact_f0(a, b).to_json() for a, b in F0_PARAMS]


def _audit_f11f1() -> list[dict]:
    return [check_fact_f11_f1(k, n, t).to_json() for k, n, t in F11_PARAMS]


def _audit_frfu() -> list[dict]:
    out = []
    for n in FRFU_NS:
        r = max_pattern_free_edges(n)
        free = y_free_check(r.witness, range(n)) is None
        bound = comb(n - 1, 2)
        out.append({
            "fact": "frfu", "params": {"n": n},
            "computed": {"max_edges": r.edges, "optimal": r.optimal, "witness_free": free},
            "expected": {"at_most": bound},
            "witnesses": [[list(e) for e in r.witness.edges]],
            "match": r.optimal and free and r.edges <= bound,
        })
    return out


def _audit_constructions() -> list[dict]:
    out = []
    for s in (1, 2, 3):
        for name, H in (("clique", gen_clique_plus_isolated(4 * s + 3, s)),
                        ("cover", gen_cover_construction(4 * s + 4, s))):
            res = max_tiling_exact(H)
            clique_term, cover_term = conjecture_terms(H.n, s)
            edges_ok = H.m == (clique_term if name == "clique" else cover_term)
            out.append({
                "fact": "constructions", "params": {"family": name, "n": H.n, "s": s},
                "computed": {"tiling_size": res.size, "optimal": res.optimal, "edges": H.m},
                "expected": {"tiling_size": s, "edges": clique_term if name == "clique" else cover_term},
                "witnesses": [[[c.edge_a, c.edge_b] for c in res.tiling.copies]],
                "match": res.optimal and res.size == s and edges_ok,
            })
    return out


def random_unit_rational(rng: random.Random) -> Fraction:
    q = rng.randint(1, 24)
    return Fraction(rng.randint(0, q), q)


def _audit_linearization(seed: int) -> list[dict]:
    rng = random.Random(seed)
    agree = 0
    first_bad = []
    for _ in range(LINEARIZATION_SAMPLES):
        vals = [random_unit_rational(rng) for _ in range(3)]
        if rng.random() < 0.25:
            # land on or next to the boundary c = 3a - b when that stays in [0, 1]
            a, b = sorted(vals[:2])
            c = 3 * a - b + rng.choice((Fraction(-1, 24), Fraction(0), Fraction(1, 24)))
            if 0 <= c <= 1:
                vals[2] = c
        if chain_holds(vals) == linear_form_holds(vals):
            agree += 1
        elif len(first_bad) < 3:
            first_bad.append([str(v) for v in vals])
    return [{
        "fact": "linearization", "params": {"samples": LINEARIZATION_SAMPLES, "seed": seed},
        "computed": {"agreements": agree}, "expected": {"agreements": LINEARIZATION_SAMPLES},
        "witnesses": first_bad, "match": agree == LINEARIZATION_SAMPLES,
    }]


def run_suite(name: str, seed: int) -> list[dict]:
    if name == "f0":
        return _audit_f0()
    if name == "f11f1":
        return _audit_f11f1()
    if name == "frfu":
        return _audit_frfu()
    if name == "constructions":
        return _audit_constructions()
    if name == "linearization":
        return _audit_linearization(seed)
    raise CLIError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def cmd_audit(args) -> int:
    started = time.perf_counter()
    names = SUITES if args.suite == "all" else tuple(s.strip() for s in args.suite.split(",") if s.strip())
    for s in names:
        if s not in SUITES:
            raise CLIError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    suites = {s: run_suite(s, args.seed) for s in names}
    ok = all(item["match"] for items in suites.values() for item in items)
    report = {"command": "audit", "args": _echo(args), "seed": args.seed, "results": suites, "pass": ok}
    rows = [{"suite": s, "params": json.dumps(item["params"], sort_keys=True),
             "computed": json.dumps(item["computed"], sort_keys=True),
             "expected": json.dumps(item["expected"], sort_keys=True), "match": item["match"]}
            for s, items in suites.items() for item in items]
    _finish(args, report, rows, started)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ytiling", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("json", "csv"), default_fmt="json"):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=fmt_choices, default=default_fmt)
        p.add_argument("--seed", type=int, default=None)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--b", type=int, default=2)
    g.add_argument("--s", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--minus", action="store_true")
    g.add_argument("--input", help="base instance for --family blowup")
    g.add_argument("--factor", type=int)
    common(g, ("hg", "json", "csv"), None)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="maximum tiling of an instance")
    s.add_argument("file")
    s.add_argument("--mode", choices=("exact", "greedy", "local", "mixed"), default="exact")
    s.add_argument("--pattern", default="y:3,2")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--timing", action="store_true", help="put wall time into the report")
    common(s)
    s.set_defaults(func=cmd_solve)

    lp = sub.add_parser("lp", help="maximum fractional hom(Y)-tiling")
    lp.add_argument("file")
    lp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    lp.add_argument("--no-exact", action="store_true", help="skip the lp >= 4*exact recheck")
    lp.add_argument("--timing", action="store_true")
    common(lp)
    lp.set_defaults(func=cmd_lp)

    au = sub.add_parser("audit", help="run fact checks and construction audits")
    au.add_argument("--suite", default="all", help=f"comma list from {','.join(SUITES)} or 'all'")
    au.add_argument("--timing", action="store_true")
    common(au)
    au.set_defaults(func=cmd_audit)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "audit" and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except (CLIError, HypergraphError, ValueError, OSError) as exc:
        print(f"ytiling: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
