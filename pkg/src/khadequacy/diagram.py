"""Braid words, their closures, and Kauffman state resolutions.

A braid letter ``g`` with ``|g| = i`` crosses the strands at positions
``i-1`` and ``i`` (0-based); its sign is the crossing sign, since closures
orient every strand downwards.

Smoothing convention: a crossing whose label agrees with its sign (A on a
positive crossing, B on a negative one) is smoothed into two vertical arcs
joined by a horizontal chord; otherwise it becomes a cap over a cup joined
by a vertical chord.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class DiagramError(ValueError):
    pass


class BraidParseError(DiagramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ChdParseError(DiagramError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.strands < 1:
            raise DiagramError(f"strand count must be positive, got {self.strands}")
        for g in self.letters:
            if g == 0 or abs(g) >= self.strands:
                raise DiagramError(
                    f"generator {abs(g)} out of range for {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def positive(self) -> int:
        return sum(1 for g in self.letters if g > 0)

    @property
    def negative(self) -> int:
        return sum(1 for g in self.letters if g < 0)

    def mirror(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-g for g in self.letters))

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise DiagramError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)


@dataclass(frozen=True)
class Crossing:
    index: int
    position: int  # left strand position; the crossing involves position, position + 1
    sign: int


@dataclass(frozen=True)
class Chord:
    label: str
    crossing: int
    ends: tuple[tuple[int, int], tuple[int, int]]  # (circle id, cyclic position)

    @property
    def same_circle(self) -> bool:
        return self.ends[0][0] == self.ends[1][0]


@dataclass(frozen=True)
class StateResolution:
    """Circles and chords of a smoothed diagram."""

    circles: tuple[int, ...]
    chords: tuple[Chord, ...]

    def __post_init__(self):
        seen: set[tuple[int, int]] = set()
        cset = set(self.circles)
        for ch in self.chords:
            for end in ch.ends:
                if end[0] not in cset:
                    raise DiagramError(f"chord {ch.label} ends on unknown circle {end[0]}")
                if end in seen:
                    raise DiagramError(f"duplicate endpoint position {end}")
                seen.add(end)

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    def circle_words(self) -> dict[int, tuple[str, ...]]:
        """Chord labels met along each circle, in cyclic order."""
        ends: dict[int, list[tuple[int, str]]] = {c: [] for c in self.circles}
        for ch in self.chords:
            for circle, pos in ch.ends:
                ends[circle].append((pos, ch.label))
        return {c: tuple(label for _, label in sorted(v)) for c, v in ends.items()}

    @classmethod
    def from_circle_words(cls, words: Sequence[Sequence[str]]) -> StateResolution:
        """Build from per-circle label sequences; each label must occur twice overall."""
        found: dict[str, list[tuple[int, int]]] = {}
        order: list[str] = []
        for c, word in enumerate(words):
            for pos, label in enumerate(word):
                if label not in found:
                    found[label] = []
                    order.append(label)
                found[label].append((c, pos))
        bad = [lab for lab, ends in found.items() if len(ends) != 2]
        if bad:
            raise DiagramError(f"chord labels not occurring exactly twice: {bad}")
        chords = tuple(
            Chord(lab, k, (found[lab][0], found[lab][1])) for k, lab in enumerate(order))
        return cls(tuple(range(len(words))), chords)

    def relabeled(self, chord_map: dict[str, str], circle_map: dict[int, int]) -> StateResolution:
        chords = tuple(
            Chord(chord_map[ch.label], ch.crossing,
                  tuple((circle_map[c], p) for c, p in ch.ends))
            for ch in self.chords)
        return StateResolution(tuple(sorted(circle_map[c] for c in self.circles)), chords)


@dataclass(frozen=True)
class LinkDiagram:
    """A braid closure, or a fixture that only records its all-A state.

    Fixture diagrams carry explicit sign counts because signs cannot be read
    back from chords.
    """

    strands: int
    crossings: tuple[Crossing, ...] = ()
    name: str = ""
    fixture_state: StateResolution | None = field(default=None, compare=False)
    fixture_counts: tuple[int, int] | None = None

    def __post_init__(self):
        if self.fixture_state is not None:
            if self.fixture_counts is None:
                raise DiagramError("fixture diagrams need explicit p and n")
            p, n = self.fixture_counts
            if p < 0 or n < 0 or p + n != len(self.fixture_state.chords):
                raise DiagramError(
                    f"p + n = {p + n} does not match {len(self.fixture_state.chords)} chords")
        for c in self.crossings:
            if c.sign not in (1, -1) or not 0 <= c.position < self.strands - 1:
                raise DiagramError(f"bad crossing {c}")

    @property
    def is_fixture(self) -> bool:
        return self.fixture_state is not None

    @property
    def p(self) -> int:
        if self.fixture_counts is not None:
            return self.fixture_counts[0]
        return sum(1 for c in self.crossings if c.sign > 0)

    @property
    def n(self) -> int:
        if self.fixture_counts is not None:
            return self.fixture_counts[1]
        return sum(1 for c in self.crossings if c.sign < 0)

    @property
    def crossing_count(self) -> int:
        return self.p + self.n


# ---------------------------------------------------------------------------
# .brd files
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def parse_braid(text: str) -> BraidWord:
    """Parse ``.brd`` text: strand count, then nonzero generator integers."""
    tokens: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for m in _TOKEN.finditer(line):
            tokens.append((m.group(), lineno, m.start() + 1))
    if not tokens:
        raise BraidParseError("missing strand count", 1, 1)
    head, line, col = tokens[0]
    try:
        strands = int(head)
    except ValueError:
        raise BraidParseError(f"strand count must be an integer, got {head!r}", line, col) from None
    if strands < 1:
        raise BraidParseError(f"strand count must be positive, got {strands}", line, col)
    letters = []
    for tok, line, col in tokens[1:]:
        try:
            g = int(tok)
        except ValueError:
            raise BraidParseError(f"expected an integer, got {tok!r}", line, col) from None
        if g == 0:
            raise BraidParseError("generator 0 is not allowed", line, col)
        if abs(g) >= strands:
            raise BraidParseError(
                f"generator {abs(g)} out of range for {strands} strands", line, col)
        letters.append(g)
    return BraidWord(strands, tuple(letters))


def format_braid(word: BraidWord, per_line: int = 20) -> str:
    lines = [str(word.strands)]
    for k in range(0, len(word.letters), per_line):
        lines.append(" ".join(str(g) for g in word.letters[k:k + per_line]))
    return "\n".join(lines) + "\n"


def load_braid(path: str | Path) -> BraidWord:
    return parse_braid(Path(path).read_text())


# ---------------------------------------------------------------------------
# .chd files
# ---------------------------------------------------------------------------

_HEADER = re.compile(r"^p\s*=\s*(\d+)\s+n\s*=\s*(\d+)$")
_CIRCLE = re.compile(r"^circle\s+(\S+)\s*:(.*)$")


def parse_chd(text: str, name: str = "") -> LinkDiagram:
    """Parse a ``.chd`` state fixture into a fixture diagram."""
    counts = None
    words: list[list[str]] = []
    circle_ids: list[str] = []
    occurrences: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if counts is None:
            m = _HEADER.match(line)
            if not m:
                raise ChdParseError("expected header 'p=<int> n=<int>'", lineno)
            counts = (int(m.group(1)), int(m.group(2)))
            continue
        m = _CIRCLE.match(line)
        if not m:
            raise ChdParseError("expected 'circle <id>: <labels>'", lineno)
        if m.group(1) in circle_ids:
            raise ChdParseError(f"duplicate circle id {m.group(1)!r}", lineno)
        circle_ids.append(m.group(1))
        labels = m.group(2).split()
        for lab in labels:
            occurrences[lab] = occurrences.get(lab, 0) + 1
            if occurrences[lab] > 2:
                raise ChdParseError(f"chord {lab!r} occurs more than twice", lineno)
        words.append(labels)
    if counts is None:
        raise ChdParseError("empty fixture", 1)
    if not words:
        raise ChdParseError("fixture has no circles", 1)
    single = sorted(lab for lab, k in occurrences.items() if k != 2)
    if single:
        raise ChdParseError(f"chords occurring once: {' '.join(single)}", len(text.splitlines()))
    state = StateResolution.from_circle_words(words)
    return LinkDiagram(0, (), name=name, fixture_state=state, fixture_counts=counts)


def format_chd(state: StateResolution, p: int, n: int) -> str:
    lines = [f"p={p} n={n}"]
    for c, word in state.circle_words().items():
        lines.append(f"circle {c}: {' '.join(word)}".rstrip())
    return "\n".join(lines) + "\n"


def load_chd(path: str | Path) -> LinkDiagram:
    path = Path(path)
    return parse_chd(path.read_text(), name=path.stem)


def load_diagram(path: str | Path) -> LinkDiagram:
    """Load a ``.brd`` braid (closed up) or a ``.chd`` fixture by suffix."""
    path = Path(path)
    if path.suffix == ".chd":
        return load_chd(path)
    if path.suffix == ".brd":
        return closure(load_braid(path), name=path.stem)
    raise DiagramError(f"unknown diagram format {path.suffix!r} (expected .brd or .chd)")


# ---------------------------------------------------------------------------
# Diagram operations
# ---------------------------------------------------------------------------

def closure(word: BraidWord, name: str = "") -> LinkDiagram:
    crossings = tuple(
        Crossing(k, abs(g) - 1, 1 if g > 0 else -1) for k, g in enumerate(word.letters))
    return LinkDiagram(word.strands, crossings, name=name)


def mirror(diagram: LinkDiagram) -> LinkDiagram:
    if diagram.is_fixture:
        raise DiagramError("cannot mirror a state fixture: its B-state is not recorded")
    crossings = tuple(Crossing(c.index, c.position, -c.sign) for c in diagram.crossings)
    name = diagram.name
    if name:
        name = name[:-len("-mirror")] if name.endswith("-mirror") else name + "-mirror"
    return LinkDiagram(diagram.strands, crossings, name=name)


def resolve(diagram: LinkDiagram, labels: str | Iterable[str]) -> StateResolution:
    """Smooth every crossing by its label ('A' or 'B').

    ``labels`` is either a single letter applied to every crossing or one
    letter per crossing.
    """
    if diagram.is_fixture:
        if isinstance(labels, str) and labels == "A":
            return diagram.fixture_state
        raise DiagramError("state fixtures only record the all-A state")
    crossings = diagram.crossings
    if isinstance(labels, str) and len(labels) == 1:
        labels = labels * len(crossings)
    labels = list(labels)
    if len(labels) != len(crossings) or set(labels) - {"A", "B"}:
        raise DiagramError("need one A/B label per crossing")

    levels = []
    for c, lab in zip(crossings, labels):
        vertical = (lab == "A") == (c.sign > 0)
        levels.append((c.position, vertical, (f"c{c.index}",)))
    circles, ends = trace_levels(diagram.strands, levels)
    chords = tuple(Chord(f"c{c.index}", c.index, ends[f"c{c.index}"]) for c in crossings)
    return StateResolution(tuple(range(circles)), chords)


def trace_levels(strands: int, levels: Sequence[tuple[int, bool, tuple[str, ...]]]):
    """Trace the circles of a smoothed braid-like closure.

    Each level is ``(position, vertical, chords)``: strands ``position`` and
    ``position + 1`` either run straight through with the chords drawn
    horizontally between them, or are joined by a cap over a cup with the
    chords drawn vertically between the two.  Multiple chords are parallel
    and listed left to right (top to bottom for vertical arcs).

    Returns the circle count and, per chord label, its two ends as
    ``(circle, cyclic position)``; circles are numbered in order of first
    traversal.
    """
    s = strands
    L = len(levels)
    if L == 0:
        return s, {}

    def node(j: int, t: int) -> int:
        return (t % L) * s + j

    # edges: (u, v, chord ends met going from u to v); every node gets two incidences
    edges: list[tuple[int, int, tuple]] = []
    for k, (a, vertical, labs) in enumerate(levels):
        for j in range(s):
            if j != a and j != a + 1:
                edges.append((node(j, k), node(j, k + 1), ()))
        if vertical:
            edges.append((node(a, k), node(a, k + 1), tuple((x, 0) for x in labs)))
            edges.append((node(a + 1, k), node(a + 1, k + 1), tuple((x, 1) for x in labs)))
        else:
            edges.append((node(a, k), node(a + 1, k), tuple((x, 0) for x in labs)))
            edges.append((node(a, k + 1), node(a + 1, k + 1), tuple((x, 1) for x in labs)))

    incid: list[list[tuple[int, int]]] = [[] for _ in range(s * L)]
    for e, (u, v, _) in enumerate(edges):
        incid[u].append((e, 0))
        incid[v].append((e, 1))

    seen = [False] * len(edges)
    found: dict[str, list[tuple[int, int]]] = {}
    circle = 0
    for start in range(s * L):
        for e0, side0 in incid[start]:
            if seen[e0]:
                continue
            pos = 0
            e, side = e0, side0
            while not seen[e]:
                seen[e] = True
                marks = edges[e][2] if side == 0 else edges[e][2][::-1]
                for mark in marks:
                    found.setdefault(mark[0], [None, None])[mark[1]] = (circle, pos)
                    pos += 1
                here = edges[e][1 - side]
                arrived = (e, 1 - side)
                nxt = incid[here]
                e, side = nxt[1] if nxt[0] == arrived else nxt[0]
            circle += 1
    return circle, {k: (v[0], v[1]) for k, v in found.items()}


def resolve_A(diagram: LinkDiagram) -> StateResolution:
    return resolve(diagram, "A")


def resolve_B(diagram: LinkDiagram) -> StateResolution:
    return resolve(diagram, "B")


def j_min(diagram: LinkDiagram) -> int:
    """Minimal quantum grading p - 2n - |s_A D|."""
    return diagram.p - 2 * diagram.n - resolve_A(diagram).circle_count
