"""Regenerate the files under src/khadequacy/fixtures from their constructions."""
import json
from pathlib import Path

from khadequacy.diagram import BraidWord, format_braid
from khadequacy.families import cable_clasp_text, f_word, negative_torus_braid, twisted_word
from khadequacy.jonsson import jonsson_graph, rp2_complex, tetrahedron_boundary

OUT = Path(__file__).resolve().parents[1] / "src" / "khadequacy" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    braids = {
        "hopf.brd": BraidWord(2, (1, 1)),
        "trefoil.brd": BraidWord(2, (1, 1, 1)),
        "t3_-4.brd": negative_torus_braid(4),
        "w_6_3.brd": twisted_word(6, 3),
        "f_5_4.brd": f_word(5, 4),
    }
    for name, word in braids.items():
        (OUT / name).write_text(format_braid(word))
    (OUT / "cable_hopf.chd").write_text(cable_clasp_text())
    (OUT / "rp2.fct").write_text(rp2_complex().to_text())
    (OUT / "tetrahedron.fct").write_text(tetrahedron_boundary().to_text())
    graph = jonsson_graph(rp2_complex()).to_json()
    (OUT / "rp2_jonsson.graph.json").write_text(json.dumps(graph, indent=1) + "\n")


if __name__ == "__main__":
    main()
