"""Pure-Python search kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them node for node
on inputs that fit in 64-bit masks.  Both return plain tuples so the dispatcher can
wrap either one identically.
"""

from __future__ import annotations


def _ratio_item(sizes, weights):
    r = 0
    for i in range(1, len(sizes)):
        if weights[i] * sizes[r] > weights[r] * sizes[i]:
            r = i
    return r


def _greedy_hit_count(masks, avail, limit):
    """Greedy hitting-set size for ``avail`` items; stops once it exceeds ``limit``."""
    left = list(avail)
    picks = 0
    while left:
        picks += 1
        if picks > limit:
            return picks
        deg: dict[int, int] = {}
        for i in left:
            x = masks[i]
            while x:
                low = x & -x
                b = low.bit_length() - 1
                deg[b] = deg.get(b, 0) + 1
                x ^= low
        top = max(deg.values())
        pick = min(b for b, c in deg.items() if c == top)
        bit = 1 << pick
        left = [i for i in left if not masks[i] & bit]
    return picks


def pack(masks, weights, budget, target, init_value, init_choice):
    """Maximum-weight family of pairwise disjoint masks.

    Branches on the lowest free element still covered by an available item: each
    available item containing it (input order), then leaving it uncovered.
    Returns ``(value, choice, nodes, exhausted)``.
    """
    m = len(masks)
    if m == 0:
        return init_value, tuple(init_choice), 0, False
    sizes = [x.bit_count() for x in masks]
    r = _ratio_item(sizes, weights)
    w_r, s_r = weights[r], sizes[r]
    wmax = max(weights)

    best = init_value
    best_choice = tuple(init_choice)
    nodes = 0
    stop = False
    exhausted = False
    stack: list[int] = []

    def rec(blocked, cur):
        nonlocal best, best_choice, nodes, stop, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = stop = True
            return
        if cur > best:
            best = cur
            best_choice = tuple(stack)
        if best >= target:
            stop = True
            return
        avail = []
        union = 0
        for i in range(m):
            x = masks[i]
            if not x & blocked:
                avail.append(i)
                union |= x
        if not avail:
            return
        if cur + (union.bit_count() * w_r) // s_r <= best:
            return
        limit = (best - cur) // wmax
        if _greedy_hit_count(masks, avail, limit) <= limit:
            return
        low = union & -union
        for i in avail:
            if masks[i] & low:
                stack.append(i)
                rec(blocked | masks[i], cur + weights[i])
                stack.pop()
                if stop:
                    return
        rec(blocked | low, cur)

    rec(0, 0)
    return best, best_choice, nodes, exhausted


def hitting_set(sets, budget, init_choice):
    """Minimum set of elements meeting every mask in ``sets``.

    ``init_choice`` is a known hitting set (an upper bound).  Branches on the first
    unhit set; branch ``i`` takes its ``i``-th free element and forbids the earlier
    ones.  Returns ``(choice, nodes, exhausted)`` with ``choice`` a sorted tuple.
    """
    best = len(init_choice)
    best_choice = tuple(sorted(init_choice))
    nodes = 0
    stop = False
    exhausted = False

    def rec(chosen, forbidden, size):
        nonlocal best, best_choice, nodes, stop, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = stop = True
            return
        first = 0
        used = 0
        lb = 0
        for s in sets:
            if s & chosen:
                continue
            a = s & ~forbidden
            if not a:
                return
            if not first:
                first = a
            if not a & used:
                used |= a
                lb += 1
        if not first:
            if size < best:
                best = size
                best_choice = tuple(b for b in range(chosen.bit_length()) if chosen >> b & 1)
            return
        if size + lb >= best:
            return
        forb = forbidden
        x = first
        while x:
            low = x & -x
            rec(chosen | low, forb, size + 1)
            if stop:
                return
            forb |= low
            x ^= low

    rec(0, 0, 0)
    return best_choice, nodes, exhausted
