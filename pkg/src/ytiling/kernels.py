"""Backend selection for the search kernels.

The compiled extension is used when it imported and the instance fits in 64-bit
masks; otherwise the pure-Python kernels run.  Set ``YTILING_PURE=1`` to force the
Python path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _kernels_py

_ext = None
if not os.environ.get("YTILING_PURE"):
    try:
        from . import _kernels as _ext  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"

DEFAULT_BUDGET = 10_000_000
_WORD = 1 << 64
_I63 = 1 << 62


@dataclass(frozen=True)
class PackResult:
    value: int
    choice: tuple[int, ...]
    nodes: int
    exhausted: bool


@dataclass(frozen=True)
class HitResult:
    choice: tuple[int, ...]
    nodes: int
    exhausted: bool


def _pick(backend: str | None, fits: bool):
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not available")
        if not fits:
            raise ValueError("instance does not fit the 64-bit kernel")
        return _ext
    return _ext if (_ext is not None and fits) else _kernels_py


def max_weight_packing(masks, weights, budget: int = DEFAULT_BUDGET, target: int | None = None,
                       incumbent: tuple[int, tuple[int, ...]] = (0, ()), backend: str | None = None) -> PackResult:
    """Maximum total weight of pairwise disjoint masks (each mask nonzero, weight > 0)."""
    masks = list(masks)
    weights = list(weights)
    if any(x <= 0 for x in masks) or any(w <= 0 for w in weights):
        raise ValueError("masks must be nonempty and weights positive")
    target = _I63 if target is None else target
    fits = all(x < _WORD for x in masks) and sum(weights) < _I63
    mod = _pick(backend, fits)
    value, choice, nodes, exhausted = mod.pack(masks, weights, budget, target, incumbent[0], tuple(incumbent[1]))
    return PackResult(value, tuple(choice), nodes, exhausted)


def greedy_hitting_set(sets) -> tuple[int, ...]:
    chosen: list[int] = []
    left = [s for s in sets]
    while left:
        deg: dict[int, int] = {}
        for s in left:
            x = s
            while x:
                low = x & -x
                b = low.bit_length() - 1
                deg[b] = deg.get(b, 0) + 1
                x ^= low
        top = max(deg.values())
        pick = min(b for b, c in deg.items() if c == top)
        chosen.append(pick)
        left = [s for s in left if not s >> pick & 1]
    return tuple(sorted(chosen))


def min_hitting_set(sets, budget: int = DEFAULT_BUDGET, backend: str | None = None) -> HitResult:
    """Smallest element set meeting every mask in ``sets``."""
    sets = list(sets)
    if any(s <= 0 for s in sets):
        raise ValueError("cannot hit an empty set")
    init = greedy_hitting_set(sets)
    fits = all(s < _WORD for s in sets)
    mod = _pick(backend, fits)
    choice, nodes, exhausted = mod.hitting_set(sets, budget, init)
    return HitResult(tuple(choice), nodes, exhausted)
