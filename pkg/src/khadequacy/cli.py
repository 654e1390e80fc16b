"""Command-line entry point: ``khadequacy <subcommand> ...``.

Every subcommand builds a JSON document first; the text format is rendered
from that document, so both views carry the same facts.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from khadequacy import __version__
from khadequacy.adequacy import adequacy_report, render_report
from khadequacy.chordgraph import ChordDiagram, Graph, bipartition, interlacement, lando_graph
from khadequacy.diagram import DiagramError, load_diagram, resolve_A
from khadequacy.families import family
from khadequacy.homology import (
    AbelianGroupSequence,
    cohomology_from_homology,
    independence_homology,
    reduced_homology,
    wedge_profile,
)
from khadequacy.jonsson import jonsson_graph, recognize_circle_graph, vsc_witness
from khadequacy.scanner import ScanError, torsion_scan
from khadequacy.simplicial import ComplexError, load_facets

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


class InputError(Exception):
    pass


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _groups_text(groups: dict[str, str], sym: str = "H̃_") -> list[str]:
    if not groups:
        return ["all reduced groups trivial"]
    return [f"{sym}{k} = {g}" for k, g in groups.items()]


def _load_graph(path: str) -> Graph:
    p = Path(path)
    if p.suffix == ".json":
        data = json.loads(p.read_text())
        if "graph" in data:
            data = data["graph"]
        return Graph.from_json(data)
    if p.suffix == ".fct":
        return jonsson_graph(load_facets(p))
    if p.suffix in (".brd", ".chd"):
        return lando_graph(resolve_A(load_diagram(p)))
    if p.suffix == ".word":
        return interlacement(ChordDiagram.parse(p.read_text()))
    raise InputError(f"cannot read a graph from {p.suffix!r} files")


# ---------------------------------------------------------------------------
# Subcommands: each returns (json document, text rendering, exit code)
# ---------------------------------------------------------------------------

def cmd_adequacy(args):
    data = adequacy_report(load_diagram(args.diagram)).to_json()
    return data, render_report(data), EXIT_OK


def cmd_lando(args):
    d = load_diagram(args.diagram)
    state = resolve_A(d)
    g = lando_graph(state)
    ok, witness = bipartition(g)
    data = {
        "schema": 1,
        "diagram": d.name,
        "circles": {str(c): " ".join(w) for c, w in state.circle_words().items()},
        "graph": g.to_json(),
        "bipartite": ok,
        "coloring" if ok else "odd_cycle": witness,
    }
    text = [f"diagram: {d.name}", f"all-A circles: {state.circle_count}",
            f"Lando graph: {len(g)} vertices, {g.num_edges} edges"]
    text += [f"  {a} -- {b}" for a, b in g.edges]
    text.append("bipartite: " + ("yes" if ok else "no, odd cycle " + " ".join(witness)))
    return data, "\n".join(text) + "\n", EXIT_OK


def cmd_homology(args):
    p = Path(args.input)
    if p.suffix == ".fct":
        x = load_facets(p)
        h = reduced_homology(x)
        source = {"facets": [list(f) for f in x.facets], "vertices": list(x.vertices)}
    else:
        g = _load_graph(args.input)
        h = independence_homology(g)
        source = {"independence_complex_of": g.to_json()}
    return _homology_doc(source, h)


def _homology_doc(source: dict, h: AbelianGroupSequence):
    co = cohomology_from_homology(h)
    profile = wedge_profile(h)
    data = {
        "schema": 1,
        "input": source,
        "homology": {str(k): s for k, s in h.to_strings().items()},
        "cohomology": {str(k): s for k, s in co.to_strings().items()},
        "wedge_profile": None if profile is None else list(profile),
    }
    text = _groups_text(data["homology"])
    text += _groups_text(data["cohomology"], "H̃^") if data["cohomology"] != data["homology"] else []
    return data, "\n".join(text) + "\n", EXIT_OK


def _recognition_text(rec: dict) -> str:
    if rec["kind"] == "realization":
        return f"circle graph, realized by the word: {rec['word']}"
    if rec["kind"] == "not_circle":
        return (f"not a circle graph; unrealizable induced subgraph on "
                f"{len(rec['certificate'])} vertices ({rec['source']}): "
                + " ".join(rec["certificate"]))
    return f"undecided: {rec['reason']}"


def cmd_jonsson(args):
    y = load_facets(args.complex)
    g = jonsson_graph(y)
    w = vsc_witness(y)
    rec = recognize_circle_graph(g, budget=args.budget, max_subsets=args.max_subsets,
                                 hint=y).to_json()
    data = {
        "schema": 1,
        "graph": g.to_json(),
        "vsc_witness": None if w is None else w.to_json(),
        "recognition": rec,
    }
    text = [f"G(Y): {len(g)} vertices, {g.num_edges} edges"]
    if w is None:
        text.append("vertex separation: no witness")
    else:
        text.append("vertex separation: facets " + ", ".join("".join(f) if all(len(v) == 1 for v in f)
                                                            else " ".join(f) for f in w.facets)
                    + "; vertices " + " ".join(w.vertices))
    text.append(_recognition_text(rec))
    return data, "\n".join(text) + "\n", EXIT_UNKNOWN if rec["kind"] == "unknown" else EXIT_OK


def cmd_recognize(args):
    g = _load_graph(args.graph)
    rec = recognize_circle_graph(g, budget=args.budget, max_subsets=args.max_subsets).to_json()
    data = {"schema": 1, "vertices": len(g), "edges": g.num_edges, "recognition": rec}
    code = EXIT_UNKNOWN if rec["kind"] == "unknown" else EXIT_OK
    return data, _recognition_text(rec) + "\n", code


def _parse_params(text: str | None) -> dict[str, int]:
    out = {}
    for item in filter(None, (text or "").split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"bad parameter {item!r}; expected name=value")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise InputError(f"parameter {key.strip()!r} must be an integer") from None
    return out


def cmd_family(args):
    spec = family(args.name, **_parse_params(args.params))
    source = spec.source_text()
    data = {"schema": 1, "source": source, "expectation": spec.expectation_json()}
    text = source + "# expectation\n" + "".join(
        f"# {line}\n" for line in _dump(spec.expectation_json()).splitlines())
    return data, text, EXIT_OK


def cmd_scan(args):
    data = torsion_scan(args.max_chords, bipartite_only=args.bipartite_only,
                        checkpoint=args.checkpoint, jobs=args.jobs)
    text = []
    for n, row in data["per_n"].items():
        text.append(f"n={n}: {row['classes']} classes, {row['bipartite']} bipartite, "
                    f"{row['scanned']} scanned, {row['torsion_hits']} with torsion")
    if data["findings"]:
        text.append("TORSION FOUND:")
        text += [f"  {f['word']}: {f['homology']}" for f in data["findings"]]
    else:
        text.append("no torsion found")
    if data["euler_failures"]:
        text.append("Euler check failed for: " + ", ".join(data["euler_failures"]))
    return data, "\n".join(text) + "\n", EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khadequacy",
        description="Extreme Khovanov homology through independence complexes of Lando graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adequacy", parents=[common], help="adequacy report for a .brd/.chd diagram")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_adequacy)

    p = sub.add_parser("lando", parents=[common], help="Lando graph of a diagram's all-A state")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_lando)

    p = sub.add_parser("homology", parents=[common],
                       help="reduced (co)homology of a .fct complex, or of I(G) for a graph")
    p.add_argument("input")
    p.set_defaults(func=cmd_homology)

    for name, func, arg, help_ in (
            ("jonsson", cmd_jonsson, "complex", "Jonsson graph, vertex separation, recognition"),
            ("recognize", cmd_recognize, "graph", "decide whether a graph is a circle graph")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument(arg)
        p.add_argument("--budget", type=int, default=8, help="largest subgraph searched exactly")
        p.add_argument("--max-subsets", type=int, default=None,
                       help="give up (exit 2) after this many induced subgraphs")
        p.set_defaults(func=func)

    p = sub.add_parser("family", parents=[common], help="emit a family member and its expectations")
    p.add_argument("name")
    p.add_argument("--params", help="comma-separated, e.g. m=6,n=3")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("scan", parents=[common], help="torsion scan over small chord diagrams")
    p.add_argument("--max-chords", type=int, default=6)
    p.add_argument("--bipartite-only", action="store_true")
    p.add_argument("--checkpoint")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; 2 is reserved for an undecided recognizer
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        data, text, code = args.func(args)
    except (InputError, DiagramError, ComplexError, ScanError, OSError,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = _dump(data) if args.format == "json" else text
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
