"""Reduced integral homology and cohomology through Smith normal form."""
from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from khadequacy import _kernels
from khadequacy.chordgraph import Graph, induced_subgraph
from khadequacy.simplicial import SimplicialComplex, independence_complex


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/d1 + ... with d1 | d2 | ..."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(
            d for d in _kernels.normalize_factors(self.torsion) if d > 1))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        text = text.strip()
        if text == "0":
            return cls()
        rank, torsion = 0, []
        for part in re.split(r"\s*(?:⊕|\+)\s*", text):
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse group {text!r}")
            torsion.append(int(m.group(1)))
        return cls(rank, tuple(torsion))

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


TRIVIAL = AbelianGroup()
Z = AbelianGroup(1)


class AbelianGroupSequence:
    """Groups indexed by degree >= -1; unspecified degrees are trivial."""

    __slots__ = ("_groups",)

    def __init__(self, groups: Mapping[int, AbelianGroup] | None = None):
        self._groups = {int(k): g for k, g in sorted((groups or {}).items())
                        if not g.is_trivial}

    def __getitem__(self, degree: int) -> AbelianGroup:
        return self._groups.get(degree, TRIVIAL)

    def items(self):
        return self._groups.items()

    def degrees(self) -> list[int]:
        return list(self._groups)

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroupSequence) and self._groups == other._groups

    def __hash__(self) -> int:
        return hash(tuple(self._groups.items()))

    def __repr__(self) -> str:
        return f"AbelianGroupSequence({self.to_strings()})"

    @property
    def is_trivial(self) -> bool:
        return not self._groups

    @property
    def has_torsion(self) -> bool:
        return any(g.torsion for g in self._groups.values())

    def shift(self, by: int) -> AbelianGroupSequence:
        return AbelianGroupSequence({k + by: g for k, g in self._groups.items()})

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * g.rank for k, g in self._groups.items())

    def to_strings(self) -> dict[int, str]:
        return {k: str(g) for k, g in self._groups.items()}

    def to_json(self) -> dict[str, dict]:
        return {str(k): g.to_json() for k, g in self._groups.items()}

    @classmethod
    def from_strings(cls, data: Mapping) -> AbelianGroupSequence:
        return cls({int(k): AbelianGroup.parse(v) for k, v in data.items()})


@dataclass(frozen=True)
class SmithForm:
    factors: tuple[int, ...]  # nonzero diagonal entries, each dividing the next

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)


def smith_normal_form(matrix) -> SmithForm:
    """Invariant factors and rank of an integer matrix.

    Runs in int64 when the compiled kernel is available and redoes the
    reduction with exact integers if an intermediate entry would overflow.
    """
    if isinstance(matrix, np.ndarray):
        a = matrix
    else:
        a = np.array(matrix, dtype=object)
        if a.size and a.ndim == 2 and all(isinstance(v, (int, np.integer)) for v in a.flat) \
                and max(abs(int(v)) for v in a.flat) < 2 ** 62:
            a = a.astype(np.int64)
    if a.ndim != 2:
        if a.size == 0:
            return SmithForm(())
        raise ValueError("expected a 2-d integer matrix")
    if a.dtype == object:
        return SmithForm(tuple(_kernels.python_kernels.snf_invariant_factors(a)))
    return SmithForm(tuple(_kernels.snf_invariant_factors(a)))


def face_bases(x: SimplicialComplex) -> dict[int, list[tuple[str, ...]]]:
    return x.faces()


def boundary_matrices(x: SimplicialComplex) -> list[np.ndarray]:
    """Augmented boundary maps: entry ``k`` is d_k from C_k to C_{k-1}.

    ``d_0`` is the augmentation onto the empty face, so the empty complex
    gets the 1 x 0 matrix and H_{-1} = Z.
    """
    faces = x.faces()
    top = max(faces)
    mats = []
    for k in range(0, max(top, 0) + 1):
        src = faces.get(k, [])
        dst = faces.get(k - 1, [])
        index = {f: i for i, f in enumerate(dst)}
        m = np.zeros((len(dst), len(src)), dtype=np.int64)
        for j, face in enumerate(src):
            for i in range(len(face)):
                m[index[face[:i] + face[i + 1:]], j] = -1 if i % 2 else 1
        mats.append(m)
    return mats


def reduced_homology(x: SimplicialComplex) -> AbelianGroupSequence:
    faces = x.faces()
    mats = boundary_matrices(x)
    snf = [smith_normal_form(m) for m in mats]
    groups = {}
    for k in range(-1, len(mats)):
        f_k = len(faces.get(k, []))
        rank_out = snf[k].rank if k >= 0 else 0
        into = snf[k + 1] if k + 1 < len(snf) else SmithForm(())
        groups[k] = AbelianGroup(f_k - rank_out - into.rank, into.torsion)
    return AbelianGroupSequence(groups)


def cohomology_from_homology(h: AbelianGroupSequence) -> AbelianGroupSequence:
    """Universal coefficients: free part in place, torsion moves up one degree."""
    groups: dict[int, AbelianGroup] = {}
    for k, g in h.items():
        if g.rank:
            prev = groups.get(k, TRIVIAL)
            groups[k] = AbelianGroup(g.rank, prev.torsion)
        if g.torsion:
            prev = groups.get(k + 1, TRIVIAL)
            groups[k + 1] = AbelianGroup(prev.rank, prev.torsion + g.torsion)
    return AbelianGroupSequence(groups)


def reduced_cohomology(x: SimplicialComplex) -> AbelianGroupSequence:
    return cohomology_from_homology(reduced_homology(x))


def wedge_profile(h: AbelianGroupSequence) -> tuple[int, ...] | None:
    """Sphere dimensions of a wedge with this homology, or None if torsion.

    A homology-level consistency check only, not a homotopy certificate.
    """
    if h.has_torsion:
        return None
    return tuple(d for d, g in h.items() for _ in range(g.rank))


def join_ranks(hx: AbelianGroupSequence, hy: AbelianGroupSequence) -> dict[int, int]:
    """Ranks of the reduced homology of a join of torsion-free complexes."""
    out: dict[int, int] = {}
    for i, gi in hx.items():
        for j, gj in hy.items():
            out[i + j + 1] = out.get(i + j + 1, 0) + gi.rank * gj.rank
    return {k: v for k, v in out.items() if v}


def _tensor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    torsion = [d for d in a.torsion for _ in range(b.rank)]
    torsion += [e for e in b.torsion for _ in range(a.rank)]
    torsion += [gcd(d, e) for d in a.torsion for e in b.torsion]
    return AbelianGroup(a.rank * b.rank, tuple(torsion))


def _tor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(0, tuple(gcd(d, e) for d in a.torsion for e in b.torsion))


def join_homology(hx: AbelianGroupSequence, hy: AbelianGroupSequence) -> AbelianGroupSequence:
    """Reduced homology of a join from the Kunneth formula, torsion included.

    H~_{k+1}(X * Y) = sum_{i+j=k} H~_i X (x) H~_j Y  +  sum_{i+j=k-1} Tor(H~_i X, H~_j Y)
    """
    parts: dict[int, list[AbelianGroup]] = {}
    for i, a in hx.items():
        for j, b in hy.items():
            parts.setdefault(i + j + 1, []).append(_tensor(a, b))
            parts.setdefault(i + j + 2, []).append(_tor(a, b))
    return AbelianGroupSequence({k: _direct_sum(gs) for k, gs in parts.items()})


def _direct_sum(groups: Iterable[AbelianGroup]) -> AbelianGroup:
    rank, torsion = 0, []
    for g in groups:
        rank += g.rank
        torsion.extend(g.torsion)
    return AbelianGroup(rank, tuple(torsion))


def fold_graph(g: Graph) -> Graph:
    """Delete vertices w having some u != w with N(u) contained in N(w).

    Each deletion keeps the homotopy type of the independence complex
    (Engstrom's fold lemma), so the result has the same homology.
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    changed = True
    while changed:
        changed = False
        for w in sorted(adj, key=lambda v: (-len(adj[v]), g.vertices.index(v))):
            nw = adj[w]
            candidates = set().union(*(adj[x] for x in nw)) if nw else set(adj)
            if any(u != w and adj[u] <= nw for u in candidates):
                for x in nw:
                    adj[x].discard(w)
                del adj[w]
                changed = True
                break
    return induced_subgraph(g, adj)


def independence_homology(g: Graph) -> AbelianGroupSequence:
    """Reduced homology of I(g), reduced by folds and split over components.

    Agrees with ``reduced_homology(independence_complex(g))`` but never
    builds the full face lattice of a large join.
    """
    h = AbelianGroupSequence({-1: Z})
    for comp in g.components():
        sub = fold_graph(induced_subgraph(g, comp))
        if any(sub.degree(v) == 0 for v in sub.vertices):
            return AbelianGroupSequence()  # a cone
        pieces = sub.components()
        if len(pieces) > 1:
            part = independence_homology(sub)
        else:
            part = reduced_homology(independence_complex(sub))
        h = join_homology(h, part)
        if h.is_trivial:
            return h
    return h


def format_homology(h: AbelianGroupSequence, cohomology: bool = False) -> str:
    sym = "H̃^" if cohomology else "H̃_"
    if h.is_trivial:
        return "all reduced groups trivial"
    return "\n".join(f"{sym}{k} = {g}" for k, g in h.items())

