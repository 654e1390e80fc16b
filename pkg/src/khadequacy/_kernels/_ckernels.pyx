# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; drop-in replacement for ``_pykernels``.

Bitmask kernels are limited to 64 vertices.  The Smith form runs on int64
and raises OverflowError instead of wrapping; callers retry in exact
arithmetic.
"""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.stdint cimport INT64_MIN

from khadequacy._kernels._pykernels import normalize_factors

ctypedef unsigned long long u64
ctypedef long long i64

BACKEND = "cython"

cnp.import_array()


cdef extern from *:
    """
    static inline int kh_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int kh_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int kh_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int kh_popcount(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    static inline int kh_ctz(unsigned long long x) {
        return __builtin_ctzll(x);
    }
    """
    int kh_mul_ovf(i64 a, i64 b, i64 *r) nogil
    int kh_sub_ovf(i64 a, i64 b, i64 *r) nogil
    int kh_add_ovf(i64 a, i64 b, i64 *r) nogil
    int kh_popcount(u64 x) nogil
    int kh_ctz(u64 x) nogil


# ---------------------------------------------------------------------------
# Smith normal form (dense, int64, smallest pivot)
# ---------------------------------------------------------------------------

cdef inline i64 _iabs(i64 x) nogil:
    return -x if x < 0 else x


cdef inline i64 _floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int _swap_in(i64[:, ::1] a, Py_ssize_t t, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k, m = a.shape[0], n = a.shape[1]
    cdef i64 tmp
    if i != t:
        for k in range(n):
            tmp = a[t, k]; a[t, k] = a[i, k]; a[i, k] = tmp
    if j != t:
        for k in range(m):
            tmp = a[k, t]; a[k, t] = a[k, j]; a[k, j] = tmp
    return 0


cdef int _row_axpy(i64[:, ::1] a, Py_ssize_t dst, Py_ssize_t src, i64 q,
                   Py_ssize_t c0) nogil:
    """row[dst] -= q * row[src] from column c0; 1 on overflow."""
    cdef Py_ssize_t j, n = a.shape[1]
    cdef i64 prod, res
    for j in range(c0, n):
        if a[src, j] == 0:
            continue
        if kh_mul_ovf(q, a[src, j], &prod) or kh_sub_ovf(a[dst, j], prod, &res):
            return 1
        a[dst, j] = res
    return 0


cdef int _col_axpy(i64[:, ::1] a, Py_ssize_t dst, Py_ssize_t src, i64 q,
                   Py_ssize_t r0) nogil:
    cdef Py_ssize_t i, m = a.shape[0]
    cdef i64 prod, res
    for i in range(r0, m):
        if a[i, src] == 0:
            continue
        if kh_mul_ovf(q, a[i, src], &prod) or kh_sub_ovf(a[i, dst], prod, &res):
            return 1
        a[i, dst] = res
    return 0


def snf_invariant_factors(matrix):
    """Nonzero Smith diagonal of an integer matrix (see ``_pykernels``)."""
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.size == 0:
        return []
    if arr.dtype.kind not in "iu":
        raise TypeError("integer matrix required")
    if arr.dtype == np.uint64 and arr.size and arr.max() > np.iinfo(np.int64).max:
        raise OverflowError("entry exceeds int64")
    cdef i64[:, ::1] a = np.ascontiguousarray(arr, dtype=np.int64).copy()
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t t = 0, i, j, bi, bj
    cdef i64 p, q, v, bv, res
    cdef bint clean, overflow = False
    out = []
    with nogil:
        while t < m and t < n:
            bi = -1; bj = -1; bv = 0
            for i in range(t, m):
                for j in range(t, n):
                    v = _iabs(a[i, j])
                    if v != 0 and (bi < 0 or v < bv):
                        bi = i; bj = j; bv = v
                if bv == 1:
                    break
            if bi < 0:
                break
            _swap_in(a, t, bi, bj)
            while True:
                p = a[t, t]
                if p == INT64_MIN:
                    overflow = True
                    break
                clean = True
                for i in range(t + 1, m):
                    if a[i, t] != 0:
                        q = _floordiv(a[i, t], p)
                        if q != 0 and _row_axpy(a, i, t, q, t):
                            overflow = True
                            break
                        if a[i, t] != 0:
                            clean = False
                if overflow:
                    break
                for j in range(t + 1, n):
                    if a[t, j] != 0:
                        q = _floordiv(a[t, j], p)
                        if q != 0 and _col_axpy(a, j, t, q, t):
                            overflow = True
                            break
                        if a[t, j] != 0:
                            clean = False
                if overflow:
                    break
                if not clean:
                    bi = t; bj = t; bv = _iabs(a[t, t])
                    for i in range(t + 1, m):
                        v = _iabs(a[i, t])
                        if v != 0 and v < bv:
                            bi = i; bj = t; bv = v
                    for j in range(t + 1, n):
                        v = _iabs(a[t, j])
                        if v != 0 and v < bv:
                            bi = t; bj = j; bv = v
                    _swap_in(a, t, bi, bj)
                    continue
                bi = -1
                if p == 1 or p == -1:
                    break
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i, j] % p != 0:
                            bi = i
                            break
                    if bi >= 0:
                        break
                if bi < 0:
                    break
                for j in range(t, n):
                    if kh_add_ovf(a[t, j], a[bi, j], &res):
                        overflow = True
                        break
                    a[t, j] = res
                if overflow:
                    break
            if overflow:
                break
            with gil:
                out.append(int(_iabs(a[t, t])))
            t += 1
    if overflow:
        raise OverflowError("int64 overflow during Smith reduction")
    return normalize_factors(out)


# ---------------------------------------------------------------------------
# Maximal independent sets
# ---------------------------------------------------------------------------

cdef void _bk(u64 r, u64 p, u64 x, u64 *comp, list out):
    cdef u64 px, low, cand
    cdef int k, u, best, c, v
    if p == 0 and x == 0:
        out.append(r)
        return
    px = p | x
    u = -1
    best = -1
    while px:
        k = kh_ctz(px)
        c = kh_popcount(p & comp[k])
        if c > best:
            u = k
            best = c
        px &= px - 1
    cand = p & ~comp[u]
    while cand:
        v = kh_ctz(cand)
        low = (<u64>1) << v
        _bk(r | low, p & comp[v], x & comp[v], comp, out)
        p &= ~low
        x |= low
        cand &= cand - 1


def maximal_independent_sets(adj):
    cdef int n = len(adj), i
    if n == 0:
        return [0]
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef u64 full = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    cdef u64 comp[64]
    for i in range(n):
        comp[i] = full & ~(<u64>adj[i]) & ~((<u64>1) << i)
    out = []
    _bk(0, full, 0, comp, out)
    out = [int(v) for v in out]
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Interlacement and realization
# ---------------------------------------------------------------------------

def interlacement_masks(word):
    cdef Py_ssize_t m = len(word), n = m // 2, pos, a, b
    cdef int first[64]
    cdef int second[64]
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 chords")
    for a in range(n):
        first[a] = -1
    for pos in range(m):
        a = word[pos]
        if first[a] < 0:
            first[a] = pos
        else:
            second[a] = pos
    cdef u64 adj[64]
    for a in range(n):
        adj[a] = 0
    for a in range(n):
        for b in range(a + 1, n):
            if (first[a] < first[b] < second[a]) != (first[a] < second[b] < second[a]):
                adj[a] |= (<u64>1) << b
                adj[b] |= (<u64>1) << a
    return [int(adj[a]) for a in range(n)]


cdef struct RealizeState:
    int n
    u64 adj[64]
    int word[128]
    int wlen
    int stack[64]
    int slen


cdef bint _realize_step(RealizeState *s, u64 unopened, u64 closed) nogil:
    cdef int idx, k, a, v
    cdef u64 after, low, rest
    if s.wlen == 2 * s.n:
        return True
    for idx in range(s.slen):
        a = s.stack[idx]
        after = 0
        for k in range(idx + 1, s.slen):
            after |= (<u64>1) << s.stack[k]
        if (s.adj[a] & ~closed) != after:
            continue
        for k in range(idx, s.slen - 1):
            s.stack[k] = s.stack[k + 1]
        s.slen -= 1
        s.word[s.wlen] = a
        s.wlen += 1
        if _realize_step(s, unopened, closed | ((<u64>1) << a)):
            return True
        s.wlen -= 1
        for k in range(s.slen, idx, -1):
            s.stack[k] = s.stack[k - 1]
        s.stack[idx] = a
        s.slen += 1
    rest = unopened
    while rest:
        v = kh_ctz(rest)
        low = (<u64>1) << v
        rest &= rest - 1
        s.stack[s.slen] = v
        s.slen += 1
        s.word[s.wlen] = v
        s.wlen += 1
        if _realize_step(s, unopened ^ low, closed):
            return True
        s.wlen -= 1
        s.slen -= 1
    return False


def realize(adj):
    cdef int n = len(adj), i
    if n == 0:
        return []
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef RealizeState *s = <RealizeState *> malloc(sizeof(RealizeState))
    cdef bint found
    cdef u64 full = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    try:
        s.n = n
        for i in range(n):
            s.adj[i] = <u64>adj[i]
        s.word[0] = 0
        s.wlen = 1
        s.stack[0] = 0
        s.slen = 1
        with nogil:
            found = _realize_step(s, full ^ 1, 0)
        if not found:
            return None
        return [s.word[i] for i in range(2 * n)]
    finally:
        free(s)


# ---------------------------------------------------------------------------
# Canonical double-occurrence words
# ---------------------------------------------------------------------------

cdef int _cmp_variant(int *word, int m, int start, int step) nogil:
    """Compare relabel(variant) with word; variant = rotation/reversal."""
    cdef int mapping[64]
    cdef int k, pos, x, v, nxt = 0
    for k in range(m // 2):
        mapping[k] = -1
    pos = start
    for k in range(m):
        x = word[pos]
        v = mapping[x]
        if v < 0:
            v = nxt
            mapping[x] = nxt
            nxt += 1
        if v != word[k]:
            return -1 if v < word[k] else 1
        pos += step
        if pos == m:
            pos = 0
        elif pos < 0:
            pos = m - 1
    return 0


cdef bint _is_canonical(int *word, int m) nogil:
    cdef int r
    for r in range(m):
        if _cmp_variant(word, m, r, 1) < 0:
            return False
        if _cmp_variant(word, m, r, -1) < 0:
            return False
    return True


def is_canonical(word):
    cdef int m = len(word), k
    cdef int buf[128]
    if m > 128:
        raise ValueError("compiled kernel supports at most 64 chords")
    for k in range(m):
        buf[k] = word[k]
    return bool(_is_canonical(buf, m))


def canonical_code(word):
    from khadequacy._kernels._pykernels import canonical_code as _cc
    return _cc(word)


cdef struct EnumState:
    int n
    int m
    int word[128]
    int wlen
    int isopen[64]
    int nopen


cdef void _enum(EnumState *s, int nxt, list out):
    cdef int a, remaining = s.m - s.wlen
    if remaining < s.nopen + 2 * (s.n - nxt):
        return
    if remaining == 0:
        if _is_canonical(s.word, s.m):
            out.append(tuple([s.word[a] for a in range(s.m)]))
        return
    for a in range(nxt):
        if s.isopen[a]:
            s.isopen[a] = 0
            s.nopen -= 1
            s.word[s.wlen] = a
            s.wlen += 1
            _enum(s, nxt, out)
            s.wlen -= 1
            s.nopen += 1
            s.isopen[a] = 1
    if nxt < s.n:
        s.isopen[nxt] = 1
        s.nopen += 1
        s.word[s.wlen] = nxt
        s.wlen += 1
        _enum(s, nxt + 1, out)
        s.wlen -= 1
        s.nopen -= 1
        s.isopen[nxt] = 0


def canonical_words(int n, prefix=()):
    if n == 0:
        return [()] if not prefix else []
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 chords")
    cdef EnumState *s = <EnumState *> malloc(sizeof(EnumState))
    cdef int k, x, nxt = 0
    out = []
    try:
        s.n = n
        s.m = 2 * n
        s.wlen = 0
        s.nopen = 0
        for k in range(n):
            s.isopen[k] = 0
        for x in prefix:
            if s.wlen >= s.m:
                return []
            if x == nxt and nxt < n:
                s.isopen[x] = 1
                s.nopen += 1
                nxt += 1
            elif 0 <= x < nxt and s.isopen[x]:
                s.isopen[x] = 0
                s.nopen -= 1
            else:
                return []
            s.word[s.wlen] = x
            s.wlen += 1
        _enum(s, nxt, out)
        return out
    finally:
        free(s)


def relabel(seq):
    from khadequacy._kernels._pykernels import relabel as _rl
    return _rl(seq)
