"""Text (.hg) and JSON serialization for hypergraphs and partitions.

``.hg``: first line ``n k m``, then ``m`` lines of ``k`` increasing vertex ids.
``#`` starts a comment anywhere on a line.  Output is canonical, so a write/read/write
cycle is byte-stable.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .hypergraph import Hypergraph, HypergraphError, Partition, build


def dumps_hg(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.k} {H.m}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def loads_hg(text: str) -> Hypergraph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise HypergraphError("empty .hg input")
    try:
        n, k, m = (int(x) for x in rows[0])
    except ValueError as exc:
        raise HypergraphError(f"bad header {' '.join(rows[0])!r}: expected 'n k m'") from exc
    body = rows[1:]
    if len(body) != m:
        raise HypergraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for i, row in enumerate(body):
        e = [int(x) for x in row]
        if any(a >= b for a, b in zip(e, e[1:])):
            raise HypergraphError(f"edge {i} is not strictly increasing: {row}", i)
        edges.append(e)
    return build(n, k, edges)


def dumps_json(H: Hypergraph) -> str:
    return json.dumps({"n": H.n, "k": H.k, "edges": [list(e) for e in H.edges]}) + "\n"


def loads_json(text: str) -> Hypergraph:
    obj = json.loads(text)
    return build(int(obj["n"]), int(obj["k"]), obj["edges"])


def digest(H: Hypergraph) -> dict:
    return {
        "n": H.n,
        "k": H.k,
        "m": H.m,
        "sha256": hashlib.sha256(dumps_hg(H).encode()).hexdigest(),
    }


def _fmt_for(path: Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "json" if path.suffix == ".json" else "hg"


def read_hypergraph(path, fmt: str | None = None) -> Hypergraph:
    path = Path(path)
    text = path.read_text()
    return loads_json(text) if _fmt_for(path, fmt) == "json" else loads_hg(text)


def write_hypergraph(H: Hypergraph, path, fmt: str | None = None) -> None:
    path = Path(path)
    text = dumps_json(H) if _fmt_for(path, fmt) == "json" else dumps_hg(H)
    path.write_text(text)


def dumps_partition(P: Partition) -> str:
    return json.dumps({"exceptional": list(P.exceptional), "clusters": [list(c) for c in P.clusters]}) + "\n"


def loads_partition(text: str) -> Partition:
    obj = json.loads(text)
    return Partition(
        tuple(sorted(obj.get("exceptional", []))),
        tuple(tuple(sorted(c)) for c in obj["clusters"]),
    )
