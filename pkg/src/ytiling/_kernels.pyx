# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""64-bit mask versions of the search kernels in ``_kernels_py``.

Same branching order, same bounds, same node counts.  The caller guarantees every
mask fits in 64 bits and every weight fits in int64.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil


cdef struct PackState:
    uint64_t* masks
    int64_t* weights
    int m
    int64_t w_r
    int64_t s_r
    int64_t wmax
    int64_t best
    int64_t target
    long long nodes
    long long budget
    int stop
    int exhausted
    int* stack
    int depth
    int* best_choice
    int best_len
    int* avail
    char* flag
    int* deg


cdef int64_t greedy_hit_count(PackState* st, int* av, int cnt, int64_t limit) noexcept nogil:
    cdef int left = cnt
    cdef int64_t picks = 0
    cdef int j, b, pick, top
    cdef uint64_t x, bit
    for j in range(cnt):
        st.flag[av[j]] = 0
    while left > 0:
        picks += 1
        if picks > limit:
            return picks
        memset(st.deg, 0, 64 * sizeof(int))
        for j in range(cnt):
            if not st.flag[av[j]]:
                x = st.masks[av[j]]
                while x:
                    st.deg[ctz64(x)] += 1
                    x &= x - 1
        pick = 0
        top = st.deg[0]
        for b in range(1, 64):
            if st.deg[b] > top:
                top = st.deg[b]
                pick = b
        bit = (<uint64_t>1) << pick
        for j in range(cnt):
            if not st.flag[av[j]] and (st.masks[av[j]] & bit):
                st.flag[av[j]] = 1
                left -= 1
    return picks


cdef void pack_rec(PackState* st, uint64_t blocked, int64_t cur, int level) noexcept nogil:
    cdef int i, cnt, j
    cdef uint64_t union_ = 0, low
    cdef int* av
    cdef int64_t limit
    st.nodes += 1
    if st.nodes > st.budget:
        st.exhausted = 1
        st.stop = 1
        return
    if cur > st.best:
        st.best = cur
        for j in range(st.depth):
            st.best_choice[j] = st.stack[j]
        st.best_len = st.depth
    if st.best >= st.target:
        st.stop = 1
        return
    av = st.avail + level * st.m
    cnt = 0
    for i in range(st.m):
        if not (st.masks[i] & blocked):
            av[cnt] = i
            cnt += 1
            union_ |= st.masks[i]
    if cnt == 0:
        return
    if cur + (popcount64(union_) * st.w_r) // st.s_r <= st.best:
        return
    limit = (st.best - cur) // st.wmax
    if greedy_hit_count(st, av, cnt, limit) <= limit:
        return
    low = union_ & (~union_ + 1)
    for j in range(cnt):
        i = av[j]
        if st.masks[i] & low:
            st.stack[st.depth] = i
            st.depth += 1
            pack_rec(st, blocked | st.masks[i], cur + st.weights[i], level + 1)
            st.depth -= 1
            if st.stop:
                return
    pack_rec(st, blocked | low, cur, level + 1)


def pack(masks, weights, long long budget, target, init_value, init_choice):
    cdef int m = len(masks)
    cdef PackState st
    cdef int i, r
    if m == 0:
        return init_value, tuple(init_choice), 0, False
    st.m = m
    st.masks = <uint64_t*>malloc(m * sizeof(uint64_t))
    st.weights = <int64_t*>malloc(m * sizeof(int64_t))
    st.stack = <int*>malloc(65 * sizeof(int))
    st.best_choice = <int*>malloc(65 * sizeof(int))
    st.avail = <int*>malloc(66 * m * sizeof(int))
    st.flag = <char*>calloc(m, sizeof(char))
    st.deg = <int*>malloc(64 * sizeof(int))
    try:
        for i in range(m):
            st.masks[i] = masks[i]
            st.weights[i] = weights[i]
        r = 0
        for i in range(1, m):
            if st.weights[i] * popcount64(st.masks[r]) > st.weights[r] * popcount64(st.masks[i]):
                r = i
        st.w_r = st.weights[r]
        st.s_r = popcount64(st.masks[r])
        st.wmax = st.weights[0]
        for i in range(1, m):
            if st.weights[i] > st.wmax:
                st.wmax = st.weights[i]
        st.best = init_value
        st.target = target if target < 2**62 else 2**62
        st.nodes = 0
        st.budget = budget
        st.stop = 0
        st.exhausted = 0
        st.depth = 0
        st.best_len = -1
        with nogil:
            pack_rec(&st, 0, 0, 0)
        if st.best_len >= 0:
            choice = tuple(st.best_choice[i] for i in range(st.best_len))
        else:
            choice = tuple(init_choice)
        return st.best, choice, st.nodes, bool(st.exhausted)
    finally:
        free(st.masks)
        free(st.weights)
        free(st.stack)
        free(st.best_choice)
        free(st.avail)
        free(st.flag)
        free(st.deg)


cdef struct HitState:
    uint64_t* sets
    int ns
    int best
    uint64_t best_mask
    int improved
    long long nodes
    long long budget
    int stop
    int exhausted


cdef void hit_rec(HitState* st, uint64_t chosen, uint64_t forbidden, int size) noexcept nogil:
    cdef int i, lb = 0
    cdef uint64_t s, a, first = 0, used = 0, x, low, forb
    st.nodes += 1
    if st.nodes > st.budget:
        st.exhausted = 1
        st.stop = 1
        return
    for i in range(st.ns):
        s = st.sets[i]
        if s & chosen:
            continue
        a = s & ~forbidden
        if not a:
            return
        if not first:
            first = a
        if not (a & used):
            used |= a
            lb += 1
    if not first:
        if size < st.best:
            st.best = size
            st.best_mask = chosen
            st.improved = 1
        return
    if size + lb >= st.best:
        return
    forb = forbidden
    x = first
    while x:
        low = x & (~x + 1)
        hit_rec(st, chosen | low, forb, size + 1)
        if st.stop:
            return
        forb |= low
        x ^= low


def hitting_set(sets, long long budget, init_choice):
    cdef HitState st
    cdef int i
    st.ns = len(sets)
    st.sets = <uint64_t*>malloc((st.ns + 1) * sizeof(uint64_t))
    try:
        for i in range(st.ns):
            st.sets[i] = sets[i]
        st.best = len(init_choice)
        st.best_mask = 0
        st.improved = 0
        st.nodes = 0
        st.budget = budget
        st.stop = 0
        st.exhausted = 0
        with nogil:
            hit_rec(&st, 0, 0, 0)
        if st.improved:
            choice = tuple(b for b in range(64) if (st.best_mask >> b) & 1)
        else:
            choice = tuple(sorted(init_choice))
        return choice, st.nodes, bool(st.exhausted)
    finally:
        free(st.sets)
