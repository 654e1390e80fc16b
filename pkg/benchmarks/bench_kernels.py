"""Time the compiled kernels against the pure-Python ones on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from khadequacy import _kernels
from khadequacy.chordgraph import cycle_graph, induced_subgraph
from khadequacy.homology import boundary_matrices
from khadequacy.jonsson import jonsson_graph, rp2_complex
from khadequacy.simplicial import independence_complex


def _torsion_core(n=200, seed=1):
    """A matrix with no unit pivots and small invariant factors (2, 4, 6, 12)."""
    rng = np.random.default_rng(seed)
    d = np.diag(rng.choice([2, 4, 6], n))
    lower = np.eye(n, dtype=np.int64) + np.diag(np.ones(n - 1, dtype=np.int64), -1)
    upper = np.eye(n, dtype=np.int64) + np.diag(rng.integers(-1, 2, n - 1), 1)
    return lower @ d @ upper


def _cases():
    core = _torsion_core()
    _, cyc = cycle_graph(22).masks()
    g = jonsson_graph(rp2_complex())
    _, jon = induced_subgraph(g, g.vertices[:9]).masks()
    _, c8 = cycle_graph(8).masks()
    return [
        (f"snf, dense {core.shape[0]}x{core.shape[1]} core", "snf_invariant_factors", (core,)),
        ("maximal independent sets C22", "maximal_independent_sets", (cyc,)),
        ("realize C8", "realize", (c8,)),
        ("realize 9-vertex Jonsson subgraph", "realize", (jon,)),
        ("canonical words, 7 chords", "canonical_words", (7,)),
    ]


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    compiled = _kernels.compiled_kernels
    if compiled is None:
        print("compiled kernels are not built; only the Python timings are shown")
    x = independence_complex(cycle_graph(18))
    big = max(boundary_matrices(x), key=lambda m: m.size)
    py = _best(_kernels.python_kernels.snf_invariant_factors, (big,), args.repeat)
    hy = _best(_kernels.snf_invariant_factors, (big,), args.repeat)
    print(f"boundary matrix {big.shape[0]}x{big.shape[1]}: python {py:.4f} s, "
          f"dispatching wrapper ({_kernels.BACKEND}) {hy:.4f} s\n")
    print(f"{'case':40s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, name, inputs in _cases():
        py = _best(getattr(_kernels.python_kernels, name), inputs, args.repeat)
        if compiled is None:
            print(f"{label:40s} {py:10.4f}")
            continue
        cy = _best(getattr(compiled, name), inputs, args.repeat)
        print(f"{label:40s} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
