import subprocess
import sys
from pathlib import Path

import pytest

from khadequacy.adequacy import adequacy_report, is_A_adequate, is_B_adequate
from khadequacy.chordgraph import cycle_graph, is_isomorphic, lando_graph
from khadequacy.diagram import DiagramError, closure, load_diagram, resolve_A
from khadequacy.families import (
    cable_clasp_text,
    cable_family,
    cable_fixture,
    cycle_prediction,
    f_family,
    f_word,
    family,
    negative_torus_braid,
    negative_torus_family,
    torus_braid,
    torus_family,
    twisted_family,
    twisted_word,
)
from khadequacy.homology import independence_homology
from conftest import FIXTURES

ROOT = Path(__file__).resolve().parents[1]


def test_torus_braid_lengths():
    assert len(torus_braid(3, 4)) == 8 and torus_braid(3, 4).negative == 0
    assert len(torus_braid(6, 3)) == 15
    hopf = closure(torus_braid(2, 2))
    assert hopf.p == 2
    with pytest.raises(DiagramError):
        torus_braid(1, 3)


def test_negative_torus_braid():
    w = negative_torus_braid(4)
    assert w.strands == 3 and w.negative == 8 and w.positive == 0
    with pytest.raises(DiagramError):
        negative_torus_braid(0)


def test_twisted_word_parities():
    even = twisted_word(6, 1)
    assert even.letters[-7:] == (2, 4, -1, -3, -5, 2, 4)
    odd = twisted_word(7, 1)
    assert odd.letters[-7:] == (2, 4, -1, -3, -5, 2, 4)
    assert twisted_word(8, 1).letters[-8:] == (2, 4, -1, -3, -5, -7, 2, 4)
    with pytest.raises(DiagramError):
        twisted_word(5, 3)


def test_f_word_exponents():
    assert f_word(5, 1).letters == (-1, -3, -3, -3, -2, -4, -4, -4)
    assert f_word(7, 1).letters == (-1, -3, -3, -3, -5, -5, -5,
                                   -2, -4, -4, -4, -6, -6, -6)
    for bad in [(6, 2), (3, 2), (5, 0)]:
        with pytest.raises(DiagramError):
            f_word(*bad)


def _pipeline(spec):
    d = closure(spec.word) if spec.word is not None else load_diagram(cable_fixture())
    g = lando_graph(resolve_A(d))
    return d, g, independence_homology(g)


SPECS = (
    [torus_family(m, n) for m in (2, 3, 5) for n in (2, 4)]
    + [negative_torus_family(r) for r in range(2, 9)]
    + [twisted_family(m, n) for m in range(6, 11) for n in (1, 2, 3, 4)]
    + [f_family(s, r) for s in (5, 7, 9) for r in range(2, 6)]
    + [cable_family()]
)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.name}-{s.params}")
def test_family_predictions(spec):
    d, g, h = _pipeline(spec)
    assert is_isomorphic(g, spec.lando)
    assert h == spec.homology
    for key in ("a_adequate", "b_adequate", "khovanov_a_adequate"):
        if key in spec.notes:
            assert getattr(adequacy_report(d), key) == spec.notes[key]


def test_sign_families_are_classically_adequate():
    for m in (2, 3, 4):
        assert is_A_adequate(closure(torus_braid(m, 3)))
    for r in (2, 5):
        assert is_B_adequate(closure(negative_torus_braid(r)))
    assert is_B_adequate(closure(f_word(7, 3)))


def test_cycle_predictions_for_negative_torus():
    # 2r = 6: two circles; 2r = 10 = 3*3 + 1: one 2-sphere
    assert negative_torus_family(3).homology.to_strings() == {1: "Z^2"}
    assert negative_torus_family(5).homology.to_strings() == {2: "Z"}
    assert f_family(7, 3).homology == cycle_prediction(6)


def test_cable_fixture_is_regenerated_from_its_construction():
    assert cable_fixture().read_text() == cable_clasp_text()
    d = load_diagram(cable_fixture())
    assert (d.p, d.n) == (12, 17)
    assert is_isomorphic(lando_graph(resolve_A(d)), cycle_graph(4))


def test_shipped_fixtures_match_generator(tmp_path):
    before = {p.name: p.read_bytes() for p in FIXTURES.iterdir() if p.is_file()}
    subprocess.run([sys.executable, str(ROOT / "tools" / "make_fixtures.py")], check=True)
    after = {p.name: p.read_bytes() for p in FIXTURES.iterdir() if p.is_file()}
    assert before == after


def test_family_dispatcher():
    assert family("twisted", m=6, n=3).params == {"m": 6, "n": 3}
    assert family("cable").fixture == "cable_hopf.chd"
    with pytest.raises(DiagramError):
        family("nonsense")
    with pytest.raises(DiagramError):
        family("f", s=5)
    with pytest.raises(DiagramError):
        family("torus", m=3, n=2, r=1)


def test_expectation_json():
    e = family("f", s=5, r=4).expectation_json()
    assert e["schema"] == 1 and e["format"] == "brd"
    assert e["lando"] == {"vertices": 8, "edges": 8, "shape": "C8"}
    assert e["homology"] == {"2": "Z"}
    assert family("cable").expectation_json()["format"] == "chd"
