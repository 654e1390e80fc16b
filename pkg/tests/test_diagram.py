import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khadequacy.diagram import (
    BraidParseError,
    BraidWord,
    ChdParseError,
    DiagramError,
    StateResolution,
    closure,
    format_braid,
    format_chd,
    j_min,
    load_diagram,
    mirror,
    parse_braid,
    parse_chd,
    resolve,
    resolve_A,
    resolve_B,
)
from khadequacy.families import torus_braid, twisted_word


def smoothing_oracle(word: BraidWord, labels: str):
    """Circle count and same-circle chord set by union-find over arc ends.

    Node (j, t) is strand position j just above level t; the closure glues
    level len(word) to level 0.
    """
    s, L = word.strands, len(word.letters)
    if L == 0:
        return s, set()
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    def node(j, t):
        return (j, t % L)

    ends = {}
    for t, g in enumerate(word.letters):
        a = abs(g) - 1
        for j in range(s):
            if j not in (a, a + 1):
                union(node(j, t), node(j, t + 1))
        a_label = labels[t] == "A"
        straight = a_label == (g > 0)
        if straight:
            union(node(a, t), node(a, t + 1))
            union(node(a + 1, t), node(a + 1, t + 1))
            ends[t] = (node(a, t), node(a + 1, t))
        else:
            union(node(a, t), node(a + 1, t))
            union(node(a, t + 1), node(a + 1, t + 1))
            ends[t] = (node(a, t), node(a, t + 1))
    roots = {find((j, t)) for j in range(s) for t in range(L)}
    same = {f"c{t}" for t, (u, v) in ends.items() if find(u) == find(v)}
    return len(roots), same


def _same_circle(state: StateResolution):
    return {ch.label for ch in state.chords if ch.same_circle}


braid_words = st.integers(2, 5).flatmap(lambda s: st.builds(
    BraidWord, st.just(s),
    st.lists(st.integers(1, s - 1).flatmap(lambda g: st.sampled_from([g, -g])),
             max_size=14).map(tuple)))


def test_parse_braid_examples():
    assert parse_braid("2\n1 1 1") == BraidWord(2, (1, 1, 1))
    w = parse_braid(format_braid(twisted_word(6, 3)))
    assert len(w) == 22 and w.positive == 19 and w.negative == 3


def test_parse_braid_rejects_out_of_range():
    with pytest.raises(BraidParseError) as err:
        parse_braid("3\n4")
    assert err.value.line == 2 and err.value.column == 1
    assert "out of range" in str(err.value)


@pytest.mark.parametrize("text, line, column", [
    ("", 1, 1),
    ("two\n1", 1, 1),
    ("3\n1 x 2", 2, 3),
    ("3\n1 0", 2, 3),
    ("0\n", 1, 1),
])
def test_parse_braid_syntax_errors(text, line, column):
    with pytest.raises(BraidParseError) as err:
        parse_braid(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_parse_braid_comments_and_empty_word():
    assert parse_braid("# unknot\n1\n") == BraidWord(1, ())
    assert parse_braid("3 # strands\n1 -2 # letters\n2") == BraidWord(3, (1, -2, 2))


@settings(max_examples=50, deadline=None)
@given(braid_words)
def test_format_parse_round_trip(word):
    assert parse_braid(format_braid(word)) == word


def test_closure_counts():
    hopf = closure(BraidWord(2, (1, 1)))
    assert (hopf.p, hopf.n) == (2, 0)
    d = closure(twisted_word(6, 3))
    assert (d.p, d.n) == (19, 3)
    unknot = closure(BraidWord(1, ()))
    assert (unknot.p, unknot.n, unknot.crossing_count) == (0, 0, 0)


def test_mirror_swaps_counts_and_is_involution():
    hopf = closure(BraidWord(2, (1, 1)))
    m = mirror(hopf)
    assert (m.p, m.n) == (0, 2)
    d = closure(twisted_word(6, 3))
    assert mirror(mirror(d)).crossings == d.crossings


@settings(max_examples=60, deadline=None)
@given(braid_words)
def test_mirror_properties(word):
    d = closure(word)
    m = mirror(d)
    assert (m.p, m.n) == (d.n, d.p)
    a_of_mirror = resolve_A(m)
    b_count, b_same = smoothing_oracle(word, "B" * len(word))
    assert a_of_mirror.circle_count == b_count
    assert _same_circle(a_of_mirror) == b_same


@settings(max_examples=80, deadline=None)
@given(braid_words, st.randoms(use_true_random=False))
def test_resolution_matches_union_find_oracle(word, rnd):
    labels = "".join(rnd.choice("AB") for _ in word.letters)
    state = resolve(closure(word), labels)
    count, same = smoothing_oracle(word, labels)
    assert state.circle_count == count
    assert _same_circle(state) == same
    assert len(state.chords) == len(word)


def test_resolve_positive_trefoil():
    state = resolve_A(closure(BraidWord(2, (1, 1, 1))))
    assert state.circle_count == 2
    assert len(state.chords) == 3
    assert not _same_circle(state)


def test_resolve_B_is_resolve_A_of_mirror():
    d = closure(torus_braid(3, 4))
    b, am = resolve_B(d), resolve_A(mirror(d))
    assert b.circle_count == am.circle_count
    assert b.circle_words() == am.circle_words()


def test_positive_braids_resolve_to_distinct_circle_chords():
    for m in range(2, 7):
        for n in range(2, 6):
            assert not _same_circle(resolve_A(closure(torus_braid(m, n))))


def test_cyclic_positions_are_distinct_per_circle():
    state = resolve_A(closure(twisted_word(7, 3)))
    seen = set()
    for ch in state.chords:
        for end in ch.ends:
            assert end not in seen
            seen.add(end)


def test_j_min_examples():
    assert j_min(closure(BraidWord(1, ()))) == -1
    assert j_min(closure(BraidWord(2, (1, 1)))) == 0
    assert j_min(closure(twisted_word(6, 3))) == 10


def test_chd_round_trip():
    state = resolve_A(closure(twisted_word(6, 3)))
    d = parse_chd(format_chd(state, 19, 3))
    assert (d.p, d.n) == (19, 3)
    assert resolve_A(d).circle_words() == state.circle_words()
    assert j_min(d) == 10


@pytest.mark.parametrize("text, line", [
    ("circle 0: a a\n", 1),
    ("p=1 n=0\ncircle 0: a a a\n", 2),
    ("p=1 n=0\ncircle 0: a\n", 2),
    ("p=1 n=0\nnonsense\n", 2),
    ("p=1 n=0\ncircle 0: a a\ncircle 0: b b\n", 3),
])
def test_chd_errors(text, line):
    with pytest.raises(ChdParseError) as err:
        parse_chd(text)
    assert err.value.line == line


def test_chd_sign_count_must_match_chords():
    with pytest.raises(DiagramError):
        parse_chd("p=2 n=0\ncircle 0: a a\n")


def test_fixture_diagrams_only_know_their_A_state(fixtures_dir):
    d = load_diagram(fixtures_dir / "cable_hopf.chd")
    assert d.is_fixture
    with pytest.raises(DiagramError):
        mirror(d)
    with pytest.raises(DiagramError):
        resolve_B(d)


def test_load_diagram_rejects_unknown_suffix(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("2\n1")
    with pytest.raises(DiagramError):
        load_diagram(p)


def test_state_relabeling_keeps_structure():
    state = resolve_A(closure(twisted_word(6, 3)))
    chord_map = {ch.label: f"x{k}" for k, ch in enumerate(reversed(state.chords))}
    circle_map = {c: state.circle_count - 1 - c for c in state.circles}
    other = state.relabeled(chord_map, circle_map)
    assert other.circle_count == state.circle_count
    assert {chord_map[x] for x in _same_circle(state)} == _same_circle(other)
