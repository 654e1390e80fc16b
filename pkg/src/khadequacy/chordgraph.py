"""Chord diagrams, interlacement (circle) graphs and Lando graphs."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from khadequacy import _kernels
from khadequacy.diagram import StateResolution

_CHUNK = re.compile(r"(\d+)")


def natural_key(label: str):
    """Sort key putting 'c2' before 'c10'."""
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p)
                 for p in _CHUNK.split(str(label)) if p)


class ChordDiagramError(ValueError):
    pass


@dataclass(frozen=True)
class ChordDiagram:
    """A cyclic double-occurrence word."""

    word: tuple[str, ...]

    def __post_init__(self):
        word = tuple(str(x) for x in self.word)
        object.__setattr__(self, "word", word)
        counts: dict[str, int] = {}
        for x in word:
            counts[x] = counts.get(x, 0) + 1
        bad = sorted((x for x, k in counts.items() if k != 2), key=natural_key)
        if bad:
            raise ChordDiagramError(f"labels not occurring exactly twice: {' '.join(bad)}")

    @classmethod
    def parse(cls, text: str) -> ChordDiagram:
        return cls(tuple(text.split()))

    def __str__(self) -> str:
        return " ".join(self.word)

    def __len__(self) -> int:
        return len(self.word) // 2

    @property
    def labels(self) -> tuple[str, ...]:
        """Labels in order of first occurrence."""
        return tuple(dict.fromkeys(self.word))

    def code(self) -> tuple[int, ...]:
        return _kernels.relabel(self.word)

    def canonical(self) -> ChordDiagram:
        """Least representative under rotation, reversal and relabelling."""
        return ChordDiagram(tuple(str(x) for x in _kernels.canonical_code(self.code())))

    def is_canonical(self) -> bool:
        code = self.code()
        return tuple(str(x) for x in code) == self.word and _kernels.is_canonical(code)

    def delete(self, labels: Iterable[str]) -> ChordDiagram:
        drop = set(labels)
        return ChordDiagram(tuple(x for x in self.word if x not in drop))

    def __or__(self, other: ChordDiagram) -> ChordDiagram:
        """Disjoint union: the two words placed one after the other."""
        if set(self.word) & set(other.word):
            raise ChordDiagramError("chord diagrams share labels")
        return ChordDiagram(self.word + other.word)


class Graph:
    """Finite simple undirected graph on string labels.  Immutable."""

    __slots__ = ("_adj", "_vertices")

    def __init__(self, vertices: Iterable = (), edges: Iterable[Sequence] = ()):
        adj: dict[str, set[str]] = {str(v): set() for v in vertices}
        for e in edges:
            a, b = (str(x) for x in e)
            if a == b:
                raise ValueError(f"loop at {a!r}")
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        self._vertices = tuple(sorted(adj, key=natural_key))
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        order = {v: k for k, v in enumerate(self._vertices)}
        out = [(a, b) for a in self._vertices for b in self._adj[a] if order[a] < order[b]]
        return tuple(sorted(out, key=lambda e: (order[e[0]], order[e[1]])))

    def neighbors(self, v: str) -> frozenset[str]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, a: str, b: str) -> bool:
        return b in self._adj.get(a, ())

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._adj

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self)}, |E|={self.num_edges})"

    def masks(self) -> tuple[tuple[str, ...], list[int]]:
        """Vertex order and adjacency bitmasks for the kernels."""
        index = {v: k for k, v in enumerate(self._vertices)}
        adj = []
        for v in self._vertices:
            m = 0
            for u in self._adj[v]:
                m |= 1 << index[u]
            adj.append(m)
        return self._vertices, adj

    def relabel(self, mapping: Mapping[str, str]) -> Graph:
        return Graph((mapping[v] for v in self._vertices),
                     ((mapping[a], mapping[b]) for a, b in self.edges))

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for v in self._vertices:
            if v in seen:
                continue
            comp = []
            queue = deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            out.append(tuple(sorted(comp, key=natural_key)))
        return out

    def to_json(self) -> dict:
        return {"vertices": list(self._vertices), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: Mapping) -> Graph:
        return cls(data.get("vertices", ()), data.get("edges", ()))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from(self.edges)
        return g


def interlacement(c: ChordDiagram | Sequence[str] | str) -> Graph:
    """Circle graph of a chord diagram: chords adjacent iff their ends alternate."""
    if isinstance(c, str):
        c = ChordDiagram.parse(c)
    elif not isinstance(c, ChordDiagram):
        c = ChordDiagram(tuple(c))
    labels = c.labels
    adj = _kernels.interlacement_masks(c.code())
    edges = [(labels[a], labels[b])
             for a in range(len(labels)) for b in range(a + 1, len(labels))
             if adj[a] >> b & 1]
    return Graph(labels, edges)


def lando_graph(state: StateResolution) -> Graph:
    """Interlacement of the same-circle chords, taken circle by circle."""
    same = {ch.label for ch in state.chords if ch.same_circle}
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for word in state.circle_words().values():
        kept = [x for x in word if x in same]
        if kept:
            g = interlacement(ChordDiagram(tuple(kept)))
            vertices.extend(g.vertices)
            edges.extend(g.edges)
    return Graph(vertices, edges)


def path_graph(n: int) -> Graph:
    """The path L_n: n + 1 vertices, n edges."""
    if n < 0:
        raise ValueError("path length must be >= 0")
    return Graph(range(n + 1), ((k, k + 1) for k in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(range(n), ((k, (k + 1) % n) for k in range(n)))


def star_graph(rays: int, center: str = "0") -> Graph:
    leaves = [f"{center}.{k}" for k in range(1, rays + 1)]
    return Graph([center, *leaves], ((center, x) for x in leaves))


def _side_maps(left: Iterable[str], right: Iterable[str]):
    left, right = set(left), set(right)
    if left & right:
        return (lambda v: f"a:{v}"), (lambda v: f"b:{v}")
    return (lambda v: v), (lambda v: v)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; on label collision sides are prefixed 'a:' and 'b:'."""
    f, h = _side_maps(g1.vertices, g2.vertices)
    return Graph([*(f(v) for v in g1.vertices), *(h(v) for v in g2.vertices)],
                 [*((f(a), f(b)) for a, b in g1.edges), *((h(a), h(b)) for a, b in g2.edges)])


def induced_subgraph(g: Graph, vertices: Iterable[str]) -> Graph:
    keep = set(vertices)
    missing = keep - set(g.vertices)
    if missing:
        raise KeyError(f"not vertices of the graph: {sorted(missing)}")
    return Graph(keep, ((a, b) for a, b in g.edges if a in keep and b in keep))


def bipartition(g: Graph) -> tuple[bool, dict[str, int] | list[str]]:
    """(True, 2-colouring) or (False, odd cycle as a closed vertex list)."""
    color: dict[str, int] = {}
    parent: dict[str, str | None] = {}
    for root in g.vertices:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.neighbors(u), key=natural_key):
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return False, _odd_cycle(parent, u, w)
    return True, color


def _odd_cycle(parent, u, w) -> list[str]:
    def chain(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pw = chain(u), chain(w)
    common = set(pu) & set(pw)
    cu = []
    for x in pu:
        cu.append(x)
        if x in common:
            break
    top = cu[-1]
    cw = pw[:pw.index(top)]
    return cu + cw[::-1] + [u]


def is_bipartite(g: Graph) -> bool:
    return bipartition(g)[0]


def is_isomorphic(g: Graph, h: Graph) -> bool:
    import networkx as nx

    if len(g) != len(h) or g.num_edges != h.num_edges:
        return False
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def enumerate_words(n: int, prefix: Sequence[int] = ()) -> list[ChordDiagram]:
    """Canonical chord diagrams with n chords (optionally with a given prefix)."""
    return [ChordDiagram(tuple(str(x) for x in w))
            for w in _kernels.canonical_words(n, tuple(prefix))]
