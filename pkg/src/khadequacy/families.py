"""Diagram families with their expected Lando graphs and homology attached."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from khadequacy.chordgraph import Graph, cycle_graph, disjoint_union, star_graph
from khadequacy.diagram import (
    BraidWord,
    DiagramError,
    StateResolution,
    format_braid,
    format_chd,
    trace_levels,
)
from khadequacy.homology import AbelianGroup, AbelianGroupSequence


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict
    word: BraidWord | None
    lando: Graph  # expected up to isomorphism
    homology: AbelianGroupSequence  # expected reduced homology of the independence complex
    fixture: str | None = None
    notes: dict = field(default_factory=dict)

    def source_text(self) -> str:
        if self.word is not None:
            return format_braid(self.word)
        return fixture_path(self.fixture).read_text()

    def expectation_json(self) -> dict:
        return {
            "schema": 1,
            "family": self.name,
            "params": self.params,
            "format": "brd" if self.word is not None else "chd",
            "lando": {"vertices": len(self.lando), "edges": self.lando.num_edges,
                      "shape": self.notes.get("shape", "")},
            "homology": {str(k): str(g) for k, g in self.homology.items()},
            **{k: v for k, v in self.notes.items() if k != "shape"},
        }


# ---------------------------------------------------------------------------
# Independent predictions (Kozlov's path and cycle formulas)
# ---------------------------------------------------------------------------

def path_prediction(n: int) -> AbelianGroupSequence:
    """Reduced homology of I(L_n), L_n the path with n edges."""
    k, r = divmod(n, 3)
    if r == 0:
        return AbelianGroupSequence()
    return AbelianGroupSequence({k: AbelianGroup(1)})


def cycle_prediction(n: int) -> AbelianGroupSequence:
    """Reduced homology of I(C_n)."""
    if n < 3:
        raise ValueError("cycles need n >= 3")
    if n % 3 == 0:
        return AbelianGroupSequence({n // 3 - 1: AbelianGroup(2)})
    k = (n + 1) // 3 if n % 3 == 2 else (n - 1) // 3
    return AbelianGroupSequence({k - 1: AbelianGroup(1)})


def sphere(dim: int, copies: int = 1) -> AbelianGroupSequence:
    return AbelianGroupSequence({dim: AbelianGroup(copies)})


# ---------------------------------------------------------------------------
# Braid words
# ---------------------------------------------------------------------------

def torus_braid(m: int, n: int) -> BraidWord:
    """(s_{m-1} ... s_2 s_1)^n."""
    if m < 2 or n < 1:
        raise DiagramError(f"torus braid needs m >= 2 and n >= 1, got m={m}, n={n}")
    return BraidWord(m, tuple(range(m - 1, 0, -1)) * n)


def negative_torus_braid(r: int) -> BraidWord:
    """Standard diagram of T(3, -r): the mirror of beta(3, r)."""
    if r < 1:
        raise DiagramError(f"r must be >= 1, got {r}")
    return torus_braid(3, r).mirror()


def twisted_word(m: int, n: int) -> BraidWord:
    """beta(m, n) s2 s4 (s1^-1 s3^-1 ... ) s2 s4; the odd run stops at m-1 or m-2."""
    if m < 6:
        raise DiagramError(f"twisted family needs m >= 6, got {m}")
    top = m - 1 if m % 2 == 0 else m - 2
    middle = tuple(-g for g in range(1, top + 1, 2))
    return BraidWord(m, torus_braid(m, n).letters + (2, 4) + middle + (2, 4))


def f_word(s: int, r: int) -> BraidWord:
    """(s1^-1 s3^-3 ... s_{s-2}^-3 s2^-1 s4^-3 ... s_{s-1}^-3)^r."""
    if s < 5 or s % 2 == 0:
        raise DiagramError(f"s must be odd and >= 5, got {s}")
    if r < 1:
        raise DiagramError(f"r must be >= 1, got {r}")
    odd = (-1,) + tuple(g for i in range(3, s - 1, 2) for g in (-i,) * 3)
    even = (-2,) + tuple(g for i in range(4, s, 2) for g in (-i,) * 3)
    return BraidWord(s, (odd + even) * r)


# ---------------------------------------------------------------------------
# Family specs
# ---------------------------------------------------------------------------

def torus_family(m: int, n: int) -> FamilySpec:
    return FamilySpec("torus", {"m": m, "n": n}, torus_braid(m, n), Graph(),
                      sphere(-1), notes={"shape": "empty", "a_adequate": True})


def negative_torus_family(r: int) -> FamilySpec:
    word = negative_torus_braid(r)
    if 2 * r < 3:
        raise DiagramError("need 2r >= 3 for a cycle Lando graph")
    return FamilySpec("negative-torus", {"r": r}, word, cycle_graph(2 * r),
                      cycle_prediction(2 * r),
                      notes={"shape": f"C{2 * r}", "b_adequate": True})


def twisted_family(m: int, n: int) -> FamilySpec:
    k = m // 2
    stars = Graph()
    for c in range(k):
        stars = disjoint_union(stars, star_graph(n, center=f"s{c}"))
    return FamilySpec("twisted", {"m": m, "n": n}, twisted_word(m, n), stars,
                      sphere(k - 1), notes={"shape": f"{k} x star({n})"})


def f_family(s: int, r: int) -> FamilySpec:
    if 2 * r < 3:
        raise DiagramError("need r >= 2 for a cycle Lando graph")
    return FamilySpec("f", {"s": s, "r": r}, f_word(s, r), cycle_graph(2 * r),
                      cycle_prediction(2 * r),
                      notes={"shape": f"C{2 * r}", "a_adequate": False,
                             "b_adequate": True, "khovanov_a_adequate": True})


def cable_family() -> FamilySpec:
    return FamilySpec("cable", {}, None, cycle_graph(4), sphere(0),
                      fixture="cable_hopf.chd",
                      notes={"shape": "C4", "a_adequate": False,
                             "khovanov_a_adequate": True})


FAMILIES = {
    "torus": (torus_family, ("m", "n")),
    "negative-torus": (negative_torus_family, ("r",)),
    "twisted": (twisted_family, ("m", "n")),
    "f": (f_family, ("s", "r")),
    "cable": (cable_family, ()),
}


def family(name: str, **params: int) -> FamilySpec:
    try:
        make, names = FAMILIES[name]
    except KeyError:
        raise DiagramError(
            f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    missing = [p for p in names if p not in params]
    extra = sorted(set(params) - set(names))
    if missing or extra:
        raise DiagramError(f"family {name!r} takes parameters {', '.join(names) or 'none'}")
    return make(**{p: int(params[p]) for p in names})


# ---------------------------------------------------------------------------
# Shipped fixtures
# ---------------------------------------------------------------------------

def fixture_path(name: str) -> Path:
    return Path(str(resources.files("khadequacy") / "fixtures" / name))


def cable_fixture() -> Path:
    return fixture_path("cable_hopf.chd")


# A trefoil as the closure of three bundle crossings, each strand tripled, with
# a clasp (two crossings) hooking the middle and right strands of one bundle.
_BUNDLE_CROSSING = (3, 2, 1, 4, 3, 2, 5, 4, 3)
_CLASP_POSITION = 1
_CLASP_LEVEL = 9


def cable_clasp_text() -> str:
    """The .chd text of the cable fixture, regenerated from its construction."""
    letters = tuple(-g for g in _BUNDLE_CROSSING) * 3
    levels = []
    for k, g in enumerate(letters):
        if k == _CLASP_LEVEL:
            levels.append((_CLASP_POSITION, False, ("h0", "h1")))
        levels.append((abs(g) - 1, g > 0, (f"c{k}",)))
    circles, ends = trace_levels(6, levels)
    words: list[list[tuple[int, str]]] = [[] for _ in range(circles)]
    for lab, pair in ends.items():
        for c, pos in pair:
            words[c].append((pos, lab))
    state = StateResolution.from_circle_words([[lab for _, lab in sorted(w)] for w in words])
    p, n = _clasp_signs(letters)
    return format_chd(state, p, n)


def _clasp_signs(letters: tuple[int, ...]) -> tuple[int, int]:
    """Orient the cable-with-clasp link and count crossing signs."""
    s, L = 6, len(letters) + 1
    clasp = _CLASP_LEVEL

    def node(j, t):
        return (t % L) * s + j

    # link edges: (u, v, tag); tags mark the crossing strand or clasp arc
    edges = []
    t = 0
    for k in range(L):
        if k == clasp:
            a = _CLASP_POSITION
            for j in range(s):
                if j not in (a, a + 1):
                    edges.append((node(j, t), node(j, t + 1), None))
            edges.append((node(a, t), node(a + 1, t), ("clasp", 0)))
            edges.append((node(a, t + 1), node(a + 1, t + 1), ("clasp", 1)))
        else:
            idx = k if k < clasp else k - 1
            g = letters[idx]
            a = abs(g) - 1
            for j in range(s):
                if j not in (a, a + 1):
                    edges.append((node(j, t), node(j, t + 1), None))
            edges.append((node(a, t), node(a + 1, t + 1), ("x", idx, 0)))
            edges.append((node(a + 1, t), node(a, t + 1), ("x", idx, 1)))
        t += 1
    incid = [[] for _ in range(s * L)]
    for e, (u, v, _) in enumerate(edges):
        incid[u].append((e, 0))
        incid[v].append((e, 1))
    direction = {}
    seen = [False] * len(edges)
    for e0 in range(len(edges)):
        if seen[e0]:
            continue
        e, side = e0, 0
        while not seen[e]:
            seen[e] = True
            if edges[e][2] is not None:
                direction[edges[e][2]] = 1 if side == 0 else -1  # 1 = down / rightward
            here = edges[e][1 - side]
            arrived = (e, 1 - side)
            nxt = incid[here]
            e, side = nxt[1] if nxt[0] == arrived else nxt[0]
    signs = []
    for idx, g in enumerate(letters):
        rel = direction[("x", idx, 0)] * direction[("x", idx, 1)]
        signs.append((1 if g > 0 else -1) * rel)
    # clasp whose A-smoothing is a cap over a cup: positive when both arcs run the same way
    clasp_sign = direction[("clasp", 0)] * direction[("clasp", 1)]
    signs += [clasp_sign, clasp_sign]
    return sum(1 for x in signs if x > 0), sum(1 for x in signs if x < 0)
