"""Hot kernels: compiled when the extension is built, pure Python otherwise."""
from __future__ import annotations

import numpy as np

from khadequacy._kernels import _pykernels as python_kernels

try:
    from khadequacy._kernels import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

_active = compiled_kernels if compiled_kernels is not None else python_kernels

BACKEND: str = _active.BACKEND
canonical_code = python_kernels.canonical_code
relabel = python_kernels.relabel
normalize_factors = python_kernels.normalize_factors
canonical_words = _active.canonical_words
is_canonical = _active.is_canonical


def interlacement_masks(word) -> list[int]:
    if compiled_kernels is not None and len(word) <= 128:
        return compiled_kernels.interlacement_masks(word)
    return python_kernels.interlacement_masks(word)


def realize(adj: list[int]) -> list[int] | None:
    if compiled_kernels is not None and len(adj) <= 64:
        return compiled_kernels.realize(adj)
    return python_kernels.realize(adj)


def maximal_independent_sets(adj: list[int]) -> list[int]:
    if compiled_kernels is not None and len(adj) <= 64:
        return compiled_kernels.maximal_independent_sets(adj)
    return python_kernels.maximal_independent_sets(adj)


_INT64_SAFE = 2 ** 62


def snf_invariant_factors(matrix) -> list[int]:
    """Invariant factors of an integer matrix.

    Unit pivots go first through the sparse Python elimination; the dense
    core left over runs in the compiled int64 kernel, and again with exact
    integers if that kernel reports overflow.
    """
    if compiled_kernels is None:
        return python_kernels.snf_invariant_factors(matrix)
    units, core = python_kernels.sparse_unit_reduction(matrix)
    rest: list[int] = []
    if core:
        if max(abs(v) for row in core for v in row) < _INT64_SAFE:
            try:
                rest = compiled_kernels.snf_invariant_factors(np.array(core, dtype=np.int64))
            except OverflowError:
                rest = python_kernels.snf_invariant_factors(core)
        else:
            rest = python_kernels.snf_invariant_factors(core)
    return normalize_factors([1] * units + rest)


__all__ = [
    "BACKEND",
    "canonical_code",
    "canonical_words",
    "compiled_kernels",
    "interlacement_masks",
    "is_canonical",
    "maximal_independent_sets",
    "normalize_factors",
    "python_kernels",
    "realize",
    "relabel",
    "snf_invariant_factors",
]
