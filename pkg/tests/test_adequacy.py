import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khadequacy.adequacy import (
    adequacy_report,
    extreme_khovanov,
    is_A_adequate,
    is_B_adequate,
    is_khovanov_A_adequate,
    render_report,
)
from khadequacy.chordgraph import lando_graph
from khadequacy.diagram import BraidWord, closure, load_diagram, mirror, parse_chd, format_chd, resolve_A
from khadequacy.families import f_word, negative_torus_braid, torus_braid, twisted_word
from khadequacy.homology import AbelianGroup
from conftest import FIXTURES

Z = AbelianGroup(1)

braids = st.integers(2, 5).flatmap(lambda s: st.builds(
    BraidWord, st.just(s),
    st.lists(st.integers(1, s - 1).flatmap(lambda g: st.sampled_from([g, -g])),
             max_size=14).map(tuple)))


def _all_fixtures():
    return [load_diagram(p) for p in sorted(FIXTURES.glob("*.brd")) + sorted(FIXTURES.glob("*.chd"))]


def test_classical_adequacy_examples():
    assert is_A_adequate(closure(BraidWord(2, (1, 1, 1))))
    t = closure(negative_torus_braid(4))
    assert not is_A_adequate(t) and is_B_adequate(t)
    f = closure(f_word(5, 4))
    assert not is_A_adequate(f) and is_B_adequate(f)


def test_b_adequacy_is_mirror_a_adequacy():
    for d in _all_fixtures():
        if d.is_fixture:
            assert is_B_adequate(d) is None
        else:
            assert is_B_adequate(d) == is_A_adequate(mirror(d))


def test_extreme_khovanov_examples():
    hopf = closure(BraidWord(2, (1, 1)))
    assert extreme_khovanov(hopf) == {0: Z}
    assert extreme_khovanov(closure(negative_torus_braid(4))) == {-5: Z}
    assert extreme_khovanov(closure(twisted_word(6, 3))) == {0: Z}


def test_adequate_diagrams_sit_at_minus_n():
    for word in (torus_braid(3, 4), BraidWord(3, (1, -2, 1, -2)), BraidWord(2, (-1, -1, -1))):
        d = closure(word)
        if is_A_adequate(d):
            assert extreme_khovanov(d) == {-d.n: Z}
            assert is_khovanov_A_adequate(d)


def test_khovanov_adequacy_examples():
    assert is_khovanov_A_adequate(closure(f_word(5, 4)))
    cable = load_diagram(FIXTURES / "cable_hopf.chd")
    assert is_khovanov_A_adequate(cable) and not is_A_adequate(cable)
    assert adequacy_report(cable).wedge_profile == (0,)


def test_khovanov_a_adequacy_can_fail():
    # a Lando graph that is a path with 3 edges has contractible independence complex
    d = parse_chd("p=0 n=4\ncircle 0: a b a c b d c d\n")
    assert not is_A_adequate(d)
    assert extreme_khovanov(d) == {}
    assert not is_khovanov_A_adequate(d)


def test_report_examples():
    r = adequacy_report(closure(f_word(5, 4), name="f_5_4"))
    assert (r.a_adequate, r.b_adequate, r.khovanov_a_adequate) == (False, True, True)
    r = adequacy_report(closure(BraidWord(2, (1, 1))))
    assert r.a_adequate and r.extreme == {0: Z}
    r = adequacy_report(closure(negative_torus_braid(6)))
    assert r.wedge_profile == (3, 3)


def test_report_json_schema():
    data = adequacy_report(closure(twisted_word(6, 3), name="w")).to_json()
    assert list(data) == ["schema", "diagram", "p", "n", "circles", "j_min", "a_adequate",
                          "b_adequate", "lando", "extreme", "khovanov_a_adequate",
                          "wedge_profile"]
    assert data["schema"] == 1
    assert data["j_min"] == 10
    assert data["extreme"] == {"0": "Z"}
    assert data["lando"] == {"vertices": 12, "edges": 9, "bipartite": True}
    json.dumps(data)


def test_text_report_carries_json_facts():
    data = adequacy_report(closure(f_word(5, 2), name="f")).to_json()
    text = render_report(data)
    assert f"j_min: {data['j_min']}" in text
    for i, g in data["extreme"].items():
        assert f"Kh^{{{i},j_min}} = {g}" in text
    assert "Khovanov A-adequate: yes" in text


def test_extreme_groups_lie_in_state_window():
    for d in _all_fixtures():
        for i in extreme_khovanov(d):
            assert -d.n <= i <= d.p


@settings(max_examples=60, deadline=None)
@given(braids)
def test_extreme_window_and_flag_on_random_braids(word):
    d = closure(word)
    ext = extreme_khovanov(d)
    assert all(-d.n <= i <= d.p for i in ext)
    r = adequacy_report(d)
    assert r.khovanov_a_adequate == bool(ext)
    if r.a_adequate:
        assert ext == {-d.n: Z}


@pytest.mark.parametrize("m, n", [(2, 3), (3, 4), (4, 3), (5, 2), (6, 5)])
def test_positive_braids_are_khovanov_adequate(m, n):
    d = closure(torus_braid(m, n))
    assert is_A_adequate(d) and is_khovanov_A_adequate(d)


def test_extreme_groups_invariant_under_relabeling():
    for word in (negative_torus_braid(5), twisted_word(7, 3), f_word(5, 3)):
        d = closure(word)
        state = resolve_A(d)
        chord_map = {ch.label: f"z{len(state.chords) - k}" for k, ch in enumerate(state.chords)}
        circle_map = {c: (c + 1) % state.circle_count for c in state.circles}
        other = parse_chd(format_chd(state.relabeled(chord_map, circle_map), d.p, d.n))
        assert extreme_khovanov(other) == extreme_khovanov(d)
        assert len(lando_graph(resolve_A(other))) == len(lando_graph(state))


def test_family_fixtures_have_wedge_profiles():
    for d in _all_fixtures():
        assert adequacy_report(d).wedge_profile is not None
