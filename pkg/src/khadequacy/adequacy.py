"""Classical and Khovanov adequacy, and the extreme Khovanov groups of a diagram."""
from __future__ import annotations

import json
from dataclasses import dataclass

from khadequacy.chordgraph import Graph, is_bipartite, lando_graph
from khadequacy.diagram import LinkDiagram, mirror, resolve_A
from khadequacy.homology import (
    AbelianGroup,
    AbelianGroupSequence,
    cohomology_from_homology,
    independence_homology,
    wedge_profile,
)


def diagram_lando_graph(d: LinkDiagram) -> Graph:
    return lando_graph(resolve_A(d))


def is_A_adequate(d: LinkDiagram) -> bool:
    """No chord of the all-A state has both ends on one circle."""
    return all(not ch.same_circle for ch in resolve_A(d).chords)


def is_B_adequate(d: LinkDiagram) -> bool | None:
    """A-adequacy of the mirror; None for state fixtures, which lack a B-state."""
    if d.is_fixture:
        return None
    return is_A_adequate(mirror(d))


def independence_homology_of(d: LinkDiagram) -> AbelianGroupSequence:
    """Reduced homology of the independence complex of the Lando graph."""
    return independence_homology(diagram_lando_graph(d))


def extreme_khovanov(d: LinkDiagram) -> dict[int, AbelianGroup]:
    """Kh^{i, j_min}(D) for every i where it is nonzero.

    The group at i is the reduced cohomology of I(D) in degree i - 1 + n.
    """
    return _extreme_from_homology(independence_homology_of(d), d.n)


def _extreme_from_homology(h: AbelianGroupSequence, n: int) -> dict[int, AbelianGroup]:
    return {deg + 1 - n: g for deg, g in cohomology_from_homology(h).items()}


def is_khovanov_A_adequate(d: LinkDiagram) -> bool:
    return bool(extreme_khovanov(d))


@dataclass(frozen=True)
class AdequacyReport:
    diagram: str
    p: int
    n: int
    circles: int
    j_min: int
    a_adequate: bool
    b_adequate: bool | None
    lando: Graph
    homology: AbelianGroupSequence
    extreme: dict[int, AbelianGroup]
    khovanov_a_adequate: bool
    wedge_profile: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "diagram": self.diagram,
            "p": self.p,
            "n": self.n,
            "circles": self.circles,
            "j_min": self.j_min,
            "a_adequate": self.a_adequate,
            "b_adequate": self.b_adequate,
            "lando": {
                "vertices": len(self.lando),
                "edges": self.lando.num_edges,
                "bipartite": is_bipartite(self.lando),
            },
            "extreme": {str(i): str(g) for i, g in sorted(self.extreme.items())},
            "khovanov_a_adequate": self.khovanov_a_adequate,
            "wedge_profile": None if self.wedge_profile is None else list(self.wedge_profile),
        }


def adequacy_report(d: LinkDiagram) -> AdequacyReport:
    state = resolve_A(d)
    g = lando_graph(state)
    h = independence_homology(g)
    extreme = _extreme_from_homology(h, d.n)
    return AdequacyReport(
        diagram=d.name,
        p=d.p,
        n=d.n,
        circles=state.circle_count,
        j_min=d.p - 2 * d.n - state.circle_count,
        a_adequate=len(g) == 0,
        b_adequate=is_B_adequate(d),
        lando=g,
        homology=h,
        extreme=extreme,
        khovanov_a_adequate=bool(extreme),
        wedge_profile=wedge_profile(h),
    )


def _yes_no(flag: bool | None) -> str:
    return "unknown" if flag is None else ("yes" if flag else "no")


def render_report(data: dict) -> str:
    """Text view of a report's JSON form."""
    lando = data["lando"]
    lines = [
        f"diagram: {data['diagram'] or '(unnamed)'}",
        f"crossings: p={data['p']} n={data['n']}",
        f"all-A circles: {data['circles']}",
        f"j_min: {data['j_min']}",
        f"A-adequate: {_yes_no(data['a_adequate'])}",
        f"B-adequate: {_yes_no(data['b_adequate'])}",
        f"Lando graph: {lando['vertices']} vertices, {lando['edges']} edges"
        + (", bipartite" if lando["bipartite"] else ", not bipartite"),
    ]
    if data["extreme"]:
        for i, g in data["extreme"].items():
            lines.append(f"Kh^{{{i},j_min}} = {g}")
    else:
        lines.append("Kh^{*,j_min} = 0")
    lines.append(f"Khovanov A-adequate: {_yes_no(data['khovanov_a_adequate'])}")
    profile = data["wedge_profile"]
    lines.append("wedge profile: " + ("none (torsion)" if profile is None else
                                      "{" + ", ".join(map(str, profile)) + "}"))
    return "\n".join(lines) + "\n"


def report_json_text(report: AdequacyReport) -> str:
    return json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
