from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from khadequacy import _kernels

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "khadequacy" / "fixtures"

BACKENDS = [_kernels.python_kernels]
if _kernels.compiled_kernels is not None:
    BACKENDS.append(_kernels.compiled_kernels)


@pytest.fixture(params=BACKENDS, ids=lambda k: k.BACKEND)
def kernels(request):
    return request.param


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# ---------------------------------------------------------------------------
# Independent oracles, written without the package's kernels
# ---------------------------------------------------------------------------

def all_words(n):
    """Every perfect matching of 2n points as a first-occurrence word."""
    def matchings(free):
        if not free:
            yield []
            return
        a = free[0]
        for k in range(1, len(free)):
            for rest in matchings(free[1:k] + free[k + 1:]):
                yield [(a, free[k])] + rest

    for pairs in matchings(list(range(2 * n))):
        w = [None] * (2 * n)
        for label, (a, b) in enumerate(pairs):
            w[a] = w[b] = label
        yield first_occurrence(w)


def first_occurrence(word):
    names = {}
    return tuple(names.setdefault(x, len(names)) for x in word)


def naive_canonical(word):
    word = list(word)
    m = len(word)
    best = None
    for seq in (word, word[::-1]):
        for r in range(m):
            cand = first_occurrence(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


def naive_interlaced(word, a, b):
    pos_a = [k for k, x in enumerate(word) if x == a]
    pos_b = [k for k, x in enumerate(word) if x == b]
    inside = sum(pos_a[0] < p < pos_a[1] for p in pos_b)
    return inside == 1


def determinantal_divisors(m):
    """Invariant factors from gcds of k x k minors (small matrices only)."""
    from math import gcd

    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                g = gcd(g, int(round(_det([[m[i, j] for j in c] for i in r]))))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _det(a):
    a = [list(map(int, row)) for row in a]
    n = len(a)
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _det([row[:j] + row[j + 1:] for row in a[1:]])
               for j in range(n))


def random_complex(rng, max_vertices=6, max_facets=6):
    nv = int(rng.integers(1, max_vertices + 1))
    facets = []
    for _ in range(int(rng.integers(1, max_facets + 1))):
        size = int(rng.integers(1, nv + 1))
        facets.append(sorted(rng.choice(nv, size=size, replace=False).tolist()))
    return facets
