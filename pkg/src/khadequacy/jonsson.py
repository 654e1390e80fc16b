"""Jonsson's bipartite graph of a complex, vertex separation, circle-graph recognition."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from khadequacy import _kernels
from khadequacy.chordgraph import ChordDiagram, Graph, induced_subgraph, natural_key
from khadequacy.simplicial import ComplexError, SimplicialComplex

VERTEX_PREFIX = "v:"
FACET_PREFIX = "f:"


def facet_label(facet) -> str:
    return FACET_PREFIX + "-".join(facet)


def jonsson_graph(y: SimplicialComplex) -> Graph:
    """Bipartite graph on vertices and facets of ``y``; v ~ F iff v is not in F."""
    if y.is_empty:
        raise ComplexError("jonsson_graph needs a complex with at least one vertex")
    vs = [VERTEX_PREFIX + v for v in y.vertices]
    fs = [facet_label(f) for f in y.facets]
    edges = [(VERTEX_PREFIX + v, facet_label(f))
             for f in y.facets for v in y.vertices if v not in f]
    return Graph(vs + fs, edges)


def complex_from_jonsson_graph(g: Graph) -> SimplicialComplex | None:
    """Recover Y from G(Y) when the labels follow the 'v:'/'f:' convention."""
    vs = [v for v in g.vertices if v.startswith(VERTEX_PREFIX)]
    fs = [v for v in g.vertices if v.startswith(FACET_PREFIX)]
    if not vs or not fs or len(vs) + len(fs) != len(g):
        return None
    names = {v: v[len(VERTEX_PREFIX):] for v in vs}
    facets = []
    for f in fs:
        if any(u.startswith(FACET_PREFIX) for u in g.neighbors(f)):
            return None
        facets.append([names[v] for v in vs if not g.has_edge(v, f)])
    y = SimplicialComplex(facets)
    return y if len(y.facets) == len(fs) else None


# ---------------------------------------------------------------------------
# Vertex Separation Condition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VSCWitness:
    facets: tuple[tuple[str, ...], ...]  # D0, D1, D2, D3
    vertices: tuple[str, str, str]  # a1, a2, a3

    def graph_labels(self) -> tuple[str, ...]:
        """The seven vertices of G(Y) carrying the obstruction."""
        return tuple(VERTEX_PREFIX + a for a in self.vertices) + tuple(
            facet_label(f) for f in self.facets)

    def to_json(self) -> dict:
        return {"facets": [list(f) for f in self.facets], "vertices": list(self.vertices)}


def is_vsc_witness(y: SimplicialComplex, w: VSCWitness) -> bool:
    facets = set(y.facets)
    if len(w.facets) != 4 or len(w.vertices) != 3 or not all(f in facets for f in w.facets):
        return False
    for i, a in enumerate(w.vertices, start=1):
        for j, f in enumerate(w.facets):
            if (a in f) != (i == j):
                return False
    return True


def vsc_witness(y: SimplicialComplex) -> VSCWitness | None:
    """First witness in label order: facets D0..D3, vertices a1..a3 with
    a_i in D_i and a_i outside every other D_j (j = 0..3)."""
    facets = [frozenset(f) for f in y.facets]
    ordered = dict(zip(facets, y.facets))
    for triple in combinations(y.vertices, 3):
        s = set(triple)
        d0 = next((f for f in facets if not f & s), None)
        if d0 is None:
            continue
        picks = []
        for a in triple:
            d = next((f for f in facets if f & s == {a}), None)
            if d is None:
                break
            picks.append(d)
        else:
            return VSCWitness(tuple(ordered[f] for f in (d0, *picks)), triple)
    return None


# ---------------------------------------------------------------------------
# Circle-graph recognition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Realization:
    word: ChordDiagram
    kind = "realization"

    def to_json(self) -> dict:
        return {"kind": self.kind, "word": str(self.word)}


@dataclass(frozen=True)
class NotCircle:
    certificate: tuple[str, ...]  # induced subgraph proven unrealizable
    source: str  # "vsc", "subset" or "exhaustive"
    kind = "not_circle"

    def to_json(self) -> dict:
        return {"kind": self.kind, "certificate": list(self.certificate), "source": self.source}


@dataclass(frozen=True)
class Unknown:
    reason: str
    kind = "unknown"

    def to_json(self) -> dict:
        return {"kind": self.kind, "reason": self.reason}


RecognitionResult = Realization | NotCircle | Unknown


def realize_graph(g: Graph) -> ChordDiagram | None:
    """A word whose interlacement graph is ``g`` under the identity labelling."""
    if len(g) == 0:
        return ChordDiagram(())
    order, adj = g.masks()
    word = _kernels.realize(adj)
    if word is None:
        return None
    return ChordDiagram(tuple(order[k] for k in word))


def _is_connected(g: Graph) -> bool:
    return len(g.components()) <= 1


def _shrink(g: Graph, cert: list[str]) -> tuple[str, ...]:
    """Greedily drop vertices while the induced subgraph stays unrealizable."""
    cert = sorted(cert, key=natural_key)
    k = 0
    while k < len(cert):
        trial = cert[:k] + cert[k + 1:]
        if trial and realize_graph(induced_subgraph(g, trial)) is None:
            cert = trial
        else:
            k += 1
    return tuple(cert)


def _candidate_subsets(g: Graph, budget: int, hint: SimplicialComplex | None
                       ) -> Iterator[tuple[str, tuple[str, ...]]]:
    y = hint if hint is not None else complex_from_jonsson_graph(g)
    if y is not None and not y.is_empty:
        w = vsc_witness(y)
        if w is not None:
            labels = w.graph_labels()
            if len(labels) <= budget and all(v in g for v in labels):
                yield "vsc", labels
    # every graph on at most 5 vertices is a circle graph
    for size in range(min(budget, len(g) - 1), 5, -1):
        for subset in combinations(g.vertices, size):
            yield "subset", subset


def recognize_circle_graph(g: Graph, budget: int = 8, max_subsets: int | None = None,
                           hint: SimplicialComplex | None = None) -> RecognitionResult:
    """Decide whether ``g`` is a circle graph, within a vertex budget.

    Components with at most ``budget`` vertices are decided exactly.  For a
    larger component only induced subgraphs of at most ``budget`` vertices
    are examined, looking for an unrealizable one (circle graphs are closed
    under induced subgraphs); if none turns up the answer is Unknown.
    """
    words: list[ChordDiagram] = []
    large = []
    for comp in g.components():
        sub = induced_subgraph(g, comp)
        if len(sub) <= budget:
            word = realize_graph(sub)
            if word is None:
                return NotCircle(_shrink(sub, list(comp)), "exhaustive")
            words.append(word)
        else:
            large.append(sub)
    if not large:
        out = ChordDiagram(())
        for w in words:
            out = out | w
        return Realization(out)
    tried = 0
    for sub in large:
        for source, subset in _candidate_subsets(sub, budget, hint):
            if max_subsets is not None and tried >= max_subsets:
                return Unknown(f"examined {tried} induced subgraphs without a certificate")
            tried += 1
            h = induced_subgraph(sub, subset)
            if source == "subset" and not _is_connected(h):
                continue
            if realize_graph(h) is None:
                return NotCircle(_shrink(h, list(subset)), source)
    return Unknown(f"component of {max(len(s) for s in large)} vertices exceeds the budget "
                   f"of {budget} and no induced subgraph within it is a certificate")


# ---------------------------------------------------------------------------
# Fixture complexes
# ---------------------------------------------------------------------------

RP2_FACETS = ("012", "123", "025", "014", "234", "245", "035", "034", "145", "135")


def rp2_complex() -> SimplicialComplex:
    """The six-vertex triangulation of the projective plane."""
    return SimplicialComplex([tuple(f) for f in RP2_FACETS])


def tetrahedron_boundary() -> SimplicialComplex:
    return SimplicialComplex([("0", "1", "2"), ("0", "1", "3"), ("0", "2", "3"), ("1", "2", "3")])
