"""Facet-presented simplicial complexes."""
from __future__ import annotations

from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Mapping

from khadequacy import _kernels
from khadequacy.chordgraph import Graph, _side_maps, natural_key


class ComplexError(ValueError):
    pass


class FacetParseError(ComplexError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SimplicialComplex:
    """Simplicial complex stored by its facets.

    ``SimplicialComplex([[]])`` is the empty complex (only the empty face),
    i.e. the (-1)-sphere.  A complex with no faces at all is rejected.
    """

    __slots__ = ("_facets", "_vertices", "_faces")

    def __init__(self, facets: Iterable[Iterable]):
        sets = {frozenset(str(v) for v in f) for f in facets}
        if not sets:
            raise ComplexError("the void complex (no faces) is not supported")
        by_size = sorted(sets, key=len, reverse=True)
        maximal: list[frozenset[str]] = []
        for f in by_size:
            if not any(f <= g for g in maximal):
                maximal.append(f)
        self._facets = tuple(sorted(
            (tuple(sorted(f, key=natural_key)) for f in maximal),
            key=lambda t: (len(t), [natural_key(v) for v in t])))
        self._vertices = tuple(sorted({v for f in maximal for v in f}, key=natural_key))
        self._faces = None

    @classmethod
    def empty(cls) -> SimplicialComplex:
        return cls([()])

    @classmethod
    def simplex(cls, vertices: Iterable) -> SimplicialComplex:
        return cls([tuple(vertices)])

    @property
    def facets(self) -> tuple[tuple[str, ...], ...]:
        return self._facets

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def is_empty(self) -> bool:
        return not self._vertices

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self._facets) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._facets == other._facets

    def __hash__(self) -> int:
        return hash(self._facets)

    def __repr__(self) -> str:
        if self.is_empty:
            return "SimplicialComplex(empty)"
        return (f"SimplicialComplex(|V|={len(self._vertices)}, "
                f"facets={len(self._facets)}, dim={self.dimension})")

    def faces(self) -> dict[int, list[tuple[str, ...]]]:
        """All faces by dimension (the empty face sits in dimension -1)."""
        if self._faces is None:
            index = {v: k for k, v in enumerate(self._vertices)}
            seen: set[tuple[int, ...]] = set()
            for f in self._facets:
                idx = tuple(index[v] for v in f)
                for k in range(len(idx) + 1):
                    seen.update(combinations(idx, k))
            by_dim: dict[int, list[tuple[str, ...]]] = {}
            for face in sorted(seen, key=lambda t: (len(t), t)):
                by_dim.setdefault(len(face) - 1, []).append(
                    tuple(self._vertices[i] for i in face))
            self._faces = by_dim
        return self._faces

    def f_vector(self) -> dict[int, int]:
        return {d: len(fs) for d, fs in self.faces().items()}

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** d * k for d, k in self.f_vector().items())

    def contains_face(self, face: Iterable) -> bool:
        s = {str(v) for v in face}
        return any(s <= set(f) for f in self._facets)

    def relabel(self, mapping: Mapping[str, str] | Callable[[str], str]) -> SimplicialComplex:
        f = mapping if callable(mapping) else mapping.__getitem__
        return SimplicialComplex([[f(v) for v in facet] for facet in self._facets])

    def to_text(self) -> str:
        if self.is_empty:
            return "{}\n"
        return "".join(" ".join(f) + "\n" for f in self._facets)


def independence_complex(g: Graph) -> SimplicialComplex:
    """Faces are the independent vertex sets; the empty graph gives the empty complex."""
    order, adj = g.masks()
    facets = []
    for mask in _kernels.maximal_independent_sets(adj):
        facets.append([order[k] for k in range(len(order)) if mask >> k & 1])
    return SimplicialComplex(facets)


def join(x: SimplicialComplex, y: SimplicialComplex) -> SimplicialComplex:
    """Join; colliding vertex labels are prefixed 'a:' (left) and 'b:' (right)."""
    f, h = _side_maps(x.vertices, y.vertices)
    return SimplicialComplex(
        [[*(f(v) for v in a), *(h(v) for v in b)] for a in x.facets for b in y.facets])


def sphere0(labels: tuple[str, str] = ("s+", "s-")) -> SimplicialComplex:
    return SimplicialComplex([[labels[0]], [labels[1]]])


def suspension(x: SimplicialComplex) -> SimplicialComplex:
    return join(x, sphere0())


def boundary_of_simplex(vertices: Iterable) -> SimplicialComplex:
    vs = [str(v) for v in vertices]
    if len(vs) < 2:
        raise ComplexError("boundary of a simplex needs at least 2 vertices")
    return SimplicialComplex(combinations(vs, len(vs) - 1))


def parse_facets(text: str) -> SimplicialComplex:
    """Parse ``.fct`` text: one facet per line, '#' comments, '{}' for the empty face."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "{}":
            facets.append(())
            continue
        labels = line.split()
        if len(set(labels)) != len(labels):
            raise FacetParseError(f"repeated vertex in facet {line!r}", lineno)
        facets.append(tuple(labels))
    if not facets:
        raise FacetParseError("no facets (the void complex is not supported)", 1)
    return SimplicialComplex(facets)


def load_facets(path: str | Path) -> SimplicialComplex:
    return parse_facets(Path(path).read_text())
