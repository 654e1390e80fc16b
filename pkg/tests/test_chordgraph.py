from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khadequacy.chordgraph import (
    ChordDiagram,
    ChordDiagramError,
    Graph,
    bipartition,
    cycle_graph,
    disjoint_union,
    enumerate_words,
    induced_subgraph,
    interlacement,
    is_bipartite,
    is_isomorphic,
    lando_graph,
    natural_key,
    path_graph,
    star_graph,
)
from khadequacy.diagram import closure, load_diagram, resolve_A
from khadequacy.families import f_word, negative_torus_braid, torus_braid, twisted_word
from conftest import FIXTURES, all_words, naive_canonical


words = st.integers(1, 6).flatmap(lambda n: st.permutations([f"w{x}" for x in range(n)] * 2))


def test_interlacement_examples():
    assert interlacement("a b a b").edges == (("a", "b"),)
    g = interlacement("a a b b")
    assert len(g) == 2 and g.num_edges == 0
    assert interlacement("a b c a b c").num_edges == 3


def test_malformed_word_rejected():
    with pytest.raises(ChordDiagramError):
        ChordDiagram.parse("a b a")
    with pytest.raises(ChordDiagramError):
        ChordDiagram.parse("a a a a")


@settings(max_examples=100, deadline=None)
@given(words, st.integers(0, 11))
def test_interlacement_rotation_and_reversal_invariant(word, shift):
    g = interlacement(word)
    r = shift % len(word)
    assert interlacement(word[r:] + word[:r]) == g
    assert interlacement(word[::-1]) == g


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_disjoint_union_of_diagrams(w1, w2):
    w2 = [x.replace("w", "u") for x in w2]
    c1, c2 = ChordDiagram(tuple(w1)), ChordDiagram(tuple(w2))
    assert interlacement(c1 | c2) == disjoint_union(interlacement(c1), interlacement(c2))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hereditary_deletion(n):
    for code in all_words(n):
        c = ChordDiagram(tuple(str(x) for x in code))
        g = interlacement(c)
        labels = c.labels
        for k in range(len(labels)):
            for drop in combinations(labels, k):
                keep = [x for x in labels if x not in drop]
                assert interlacement(c.delete(drop)) == induced_subgraph(g, keep)


def test_canonical_form_matches_naive():
    for code in all_words(4):
        c = ChordDiagram(tuple(str(x) for x in code))
        expected = tuple(str(x) for x in naive_canonical(code))
        assert c.canonical().word == expected
        assert c.canonical().is_canonical()


def test_enumerate_words_gives_each_class_once():
    for n in range(1, 6):
        ws = enumerate_words(n)
        assert len({w.canonical() for w in ws}) == len(ws)
        assert all(w.is_canonical() for w in ws)


def test_path_and_cycle():
    assert len(path_graph(0)) == 1 and path_graph(0).num_edges == 0
    p = path_graph(5)
    assert (len(p), p.num_edges) == (6, 5)
    c = cycle_graph(7)
    assert (len(c), c.num_edges) == (7, 7)
    with pytest.raises(ValueError):
        cycle_graph(2)
    with pytest.raises(ValueError):
        path_graph(-1)


def test_bipartition_witnesses():
    ok, coloring = bipartition(cycle_graph(8))
    assert ok
    assert all(coloring[a] != coloring[b] for a, b in cycle_graph(8).edges)
    ok, cycle = bipartition(interlacement("a b c a b c"))
    assert not ok
    assert cycle[0] == cycle[-1] and len(cycle) == 4


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 12))
def test_odd_cycle_witness_is_a_closed_odd_walk(n):
    g = cycle_graph(n)
    ok, witness = bipartition(g)
    assert ok == (n % 2 == 0)
    if not ok:
        assert witness[0] == witness[-1]
        assert (len(witness) - 1) % 2 == 1
        assert all(g.has_edge(a, b) for a, b in zip(witness, witness[1:]))


def test_graph_json_round_trip():
    g = disjoint_union(star_graph(3), cycle_graph(4))
    assert Graph.from_json(g.to_json()) == g


def test_disjoint_union_prefixes_on_collision():
    g = disjoint_union(path_graph(1), path_graph(1))
    assert set(g.vertices) == {"a:0", "a:1", "b:0", "b:1"}
    assert g.num_edges == 2


def test_natural_key_orders_numbers():
    assert sorted(["c10", "c2", "c1"], key=natural_key) == ["c1", "c2", "c10"]


def test_induced_subgraph_rejects_unknown_vertices():
    with pytest.raises(KeyError):
        induced_subgraph(path_graph(2), ["0", "9"])


@pytest.mark.parametrize("word, shape", [
    (negative_torus_braid(4), cycle_graph(8)),
    (f_word(5, 4), cycle_graph(8)),
])
def test_lando_graph_cycles(word, shape):
    assert is_isomorphic(lando_graph(resolve_A(closure(word))), shape)


def test_lando_graph_three_stars():
    g = lando_graph(resolve_A(closure(twisted_word(6, 3))))
    expected = disjoint_union(disjoint_union(star_graph(3, "a"), star_graph(3, "b")),
                              star_graph(3, "c"))
    assert is_isomorphic(g, expected)
    assert len(g.components()) == 3


def test_lando_graphs_of_fixtures_are_bipartite():
    for path in sorted(FIXTURES.glob("*.brd")) + sorted(FIXTURES.glob("*.chd")):
        assert is_bipartite(lando_graph(resolve_A(load_diagram(path)))), path.name


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda s: st.lists(
    st.integers(1, s - 1).flatmap(lambda g: st.sampled_from([g, -g])),
    max_size=16).map(lambda letters: (s, tuple(letters)))))
def test_lando_graph_bipartite_on_random_braids(sw):
    from khadequacy.diagram import BraidWord

    s, letters = sw
    assert is_bipartite(lando_graph(resolve_A(closure(BraidWord(s, letters)))))


def test_positive_braid_lando_graph_empty():
    assert len(lando_graph(resolve_A(closure(torus_braid(4, 3))))) == 0
