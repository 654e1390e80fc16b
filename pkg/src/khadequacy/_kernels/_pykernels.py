"""Pure-Python kernels.

Same call signatures as the compiled ``_ckernels`` module.  Graphs are passed
as lists of adjacency bitmasks (bit ``j`` of ``adj[i]`` set iff ``i ~ j``);
double-occurrence words are tuples of small ints in first-occurrence form.
"""
from __future__ import annotations

from math import gcd

import numpy as np

BACKEND = "python"


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def snf_invariant_factors(matrix) -> list[int]:
    """Nonzero diagonal of the Smith form of an integer matrix.

    Exact (Python ints).  Unit pivots are eliminated sparsely first, which
    disposes of almost all of a simplicial boundary matrix; whatever is left
    goes through the dense smallest-pivot reduction.
    """
    units, core = sparse_unit_reduction(matrix)
    return normalize_factors([1] * units + (_dense_snf(core) if core else []))


def sparse_unit_reduction(matrix) -> tuple[int, list[list[int]]]:
    """Eliminate +-1 pivots sparsely.

    Returns the number of unit pivots removed and the remaining dense core
    (rows and columns that are entirely zero dropped), whose Smith diagonal
    completes the answer.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.size == 0:
        return 0, []
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    nz_r, nz_c = np.nonzero(a)
    for i, j in zip(nz_r.tolist(), nz_c.tolist()):
        v = int(a[i, j])
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            rs = cols.get(c)
            if not rs:
                cols.pop(c, None)
                continue
            best = None
            for r in rs:
                if abs(rows[r][c]) == 1 and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            _eliminate_unit(rows, cols, best, c)
            units += 1
            progress = True

    rest = sorted(r for r in rows if rows[r])
    used_cols = sorted({c for r in rest for c in rows[r]})
    cidx = {c: k for k, c in enumerate(used_cols)}
    dense = [[0] * len(used_cols) for _ in rest]
    for k, r in enumerate(rest):
        for c, v in rows[r].items():
            dense[k][cidx[c]] = v
    return units, dense


def _eliminate_unit(rows, cols, pr, pc):
    prow = rows[pr]
    pv = prow[pc]
    for r in list(cols[pc]):
        if r == pr:
            continue
        row = rows[r]
        f = row[pc] * pv  # pv is a unit, so pv == 1/pv
        for c, v in prow.items():
            nv = row.get(c, 0) - f * v
            if nv:
                if c not in row:
                    cols.setdefault(c, set()).add(r)
                row[c] = nv
            elif c in row:
                del row[c]
                cols[c].discard(r)
    for c in prow:
        cols[c].discard(pr)
        if not cols[c]:
            del cols[c]
    del rows[pr]


def _dense_snf(a: list[list[int]]) -> list[int]:
    m = len(a)
    n = len(a[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        piv = _smallest(a, t, t, m, n)
        if piv is None:
            break
        _swap(a, t, piv[0], piv[1])
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, m):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        clean = False
            if not clean:
                piv = _smallest_cross(a, t, m, n)
                _swap(a, t, piv[0], piv[1])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for j in range(t, n):
                rt[j] += rb[j]
        out.append(abs(a[t][t]))
        t += 1
    return out


def _smallest(a, r0, c0, m, n):
    best = None
    bv = 0
    for i in range(r0, m):
        row = a[i]
        for j in range(c0, n):
            v = abs(row[j])
            if v and (best is None or v < bv):
                best, bv = (i, j), v
                if v == 1:
                    return best
    return best


def _smallest_cross(a, t, m, n):
    best, bv = (t, t), abs(a[t][t])
    for i in range(t + 1, m):
        v = abs(a[i][t])
        if v and v < bv:
            best, bv = (i, t), v
    for j in range(t + 1, n):
        v = abs(a[t][j])
        if v and v < bv:
            best, bv = (t, j), v
    return best


def _swap(a, t, i, j):
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def normalize_factors(factors) -> list[int]:
    """Turn any list of diagonal entries into the invariant-factor chain."""
    fs = sorted(abs(int(f)) for f in factors if f)
    changed = True
    while changed:
        changed = False
        for i in range(len(fs)):
            for j in range(i + 1, len(fs)):
                a, b = fs[i], fs[j]
                if b % a:
                    g = gcd(a, b)
                    fs[i], fs[j] = g, a // g * b
                    changed = True
        fs.sort()
    return fs


# ---------------------------------------------------------------------------
# Graph kernels
# ---------------------------------------------------------------------------

def maximal_independent_sets(adj: list[int]) -> list[int]:
    """Bron-Kerbosch with pivoting on the complement graph; sorted bitmasks."""
    n = len(adj)
    full = (1 << n) - 1
    comp = [full & ~adj[i] & ~(1 << i) for i in range(n)]
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        px = p | x
        # pivot maximising |P ∩ N(u)|
        u, best = -1, -1
        while px:
            low = px & -px
            k = low.bit_length() - 1
            c = bin(p & comp[k]).count("1")
            if c > best:
                u, best = k, c
            px ^= low
        cand = p & ~comp[u]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & comp[v], x & comp[v])
            p &= ~low
            x |= low
            cand ^= low

    if n == 0:
        return [0]
    expand(0, full, 0)
    out.sort()
    return out


def interlacement_masks(word) -> list[int]:
    """Adjacency bitmasks of the interlacement graph of a 0..n-1 word."""
    n = len(word) // 2
    first = [-1] * n
    second = [-1] * n
    for pos, x in enumerate(word):
        if first[x] < 0:
            first[x] = pos
        else:
            second[x] = pos
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            inside = (first[a] < first[b] < second[a]) != (first[a] < second[b] < second[a])
            if inside:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


def realize(adj: list[int]) -> list[int] | None:
    """Find a double-occurrence word whose interlacement graph is exactly ``adj``.

    Labelled backtracking: the word is written left to right; closing chord
    ``a`` fixes every adjacency of ``a``, namely ``a ~ x`` iff ``x`` is open
    and was opened after ``a``.  Rotation lets vertex 0 start the word.
    """
    n = len(adj)
    if n == 0:
        return []
    word: list[int] = []
    stack: list[int] = []  # open chords in opening order

    def step(unopened: int, closed: int) -> bool:
        if len(word) == 2 * n:
            return True
        # close an open chord
        for idx in range(len(stack)):
            a = stack[idx]
            after = 0
            for b in stack[idx + 1:]:
                after |= 1 << b
            if (adj[a] & ~closed) != after:
                continue
            stack.pop(idx)
            word.append(a)
            if step(unopened, closed | (1 << a)):
                return True
            word.pop()
            stack.insert(idx, a)
        # open a new chord
        rest = unopened
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            stack.append(v)
            word.append(v)
            if step(unopened ^ low, closed):
                return True
            word.pop()
            stack.pop()
        return False

    full = (1 << n) - 1
    stack.append(0)
    word.append(0)
    if step(full ^ 1, 0):
        return list(word)
    return None


# ---------------------------------------------------------------------------
# Double-occurrence words
# ---------------------------------------------------------------------------

def _relabel_less(word, seq) -> int:
    """Compare relabel(seq) with ``word``: -1 if smaller, 0 equal, 1 larger."""
    mapping: dict[int, int] = {}
    nxt = 0
    for x, y in zip(seq, word):
        v = mapping.get(x)
        if v is None:
            v = mapping[x] = nxt
            nxt += 1
        if v != y:
            return -1 if v < y else 1
    return 0


def _variants(word):
    m = len(word)
    rev = word[::-1]
    for r in range(m):
        yield word[r:] + word[:r]
        yield rev[r:] + rev[:r]


def relabel(seq) -> tuple[int, ...]:
    mapping: dict = {}
    out = []
    for x in seq:
        if x not in mapping:
            mapping[x] = len(mapping)
        out.append(mapping[x])
    return tuple(out)


def canonical_code(word) -> tuple[int, ...]:
    """Least first-occurrence relabelling over all rotations and reversals."""
    word = tuple(word)
    if not word:
        return ()
    return min(relabel(v) for v in _variants(word))


def is_canonical(word) -> bool:
    word = tuple(word)
    for v in _variants(word):
        if _relabel_less(word, v) < 0:
            return False
    return True


def canonical_words(n: int, prefix=()) -> list[tuple[int, ...]]:
    """All canonical n-chord words starting with ``prefix``, in lex order."""
    if n == 0:
        return [()] if not prefix else []
    state = _prefix_state(n, tuple(prefix))
    if state is None:
        return []
    word, open_, nxt = state
    out: list[tuple[int, ...]] = []
    length = 2 * n

    def rec(nxt: int) -> None:
        remaining = length - len(word)
        if remaining < len(open_) + 2 * (n - nxt):
            return
        if not remaining:
            w = tuple(word)
            if is_canonical(w):
                out.append(w)
            return
        for a in sorted(open_):
            open_.remove(a)
            word.append(a)
            rec(nxt)
            word.pop()
            open_.add(a)
        if nxt < n:
            open_.add(nxt)
            word.append(nxt)
            rec(nxt + 1)
            word.pop()
            open_.discard(nxt)

    rec(nxt)
    return out


def _prefix_state(n, prefix):
    word: list[int] = []
    open_: set[int] = set()
    nxt = 0
    for x in prefix:
        if x == nxt and nxt < n:
            open_.add(x)
            nxt += 1
        elif x in open_:
            open_.remove(x)
        else:
            return None
        word.append(x)
    if len(open_) + 2 * (n - nxt) > 2 * n - len(word):
        return None
    return word, open_, nxt
