"""Command-line front end for sphere maps, digraphs, minors, and diagrams.

Decision verbs print ``YES`` or ``NO`` and exit 0/1; constructive verbs
write documents in the canonical text formats, to standard output or to
``--out``; malformed input, refused operations, and exhausted budgets
exit 2 with a diagnostic on standard error.  ``batch`` runs a manifest of
command lines, one result line each, never aborting on a bad line.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import shlex
import sys
from pathlib import Path

from .diagrams import (
    SMOOTHING_KINDS,
    WitnessSet,
    diagram_leq,
    diagram_leq_bruteforce,
    exchange,
    format_diagram,
    leadsto,
    leadsto_target_search,
    parse_diagram,
    smooth,
    tait_graphs,
)
from .medial import (
    SPLIT_KINDS,
    directed_medial,
    format_good_digraph,
    medial,
    parse_good_digraph,
    split,
    split_reachable,
    underlying_plane_graph,
)
from .minors import (
    Limits,
    brute_force_minor,
    format_model,
    is_sphere_minor,
)
from .sphere_map import (
    MODES,
    REFLECTIVE,
    MapError,
    ParseError,
    canonical_order,
    dual,
    enumerate_connected_maps,
    equivalent,
    format_map,
    make_grid,
    parse_map,
    relabel,
)

DECISION_VERBS = frozenset({"iso", "split-reach", "minor", "dleq", "leadsto", "reach"})


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_map(path: str):
    m = parse_map(_read(path), source=path)
    return m


def _load_digraph(path: str):
    return parse_good_digraph(_read(path), source=path)


def _load_diagram(path: str):
    return parse_diagram(_read(path), source=path)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _decide(answer: bool) -> int:
    print("YES" if answer else "NO")
    return 0 if answer else 1


def _limits(args) -> Limits:
    base = Limits()
    return Limits(
        minor_node_budget=getattr(args, "node_budget", None) or base.minor_node_budget,
        brute_force_edge_cap=getattr(args, "edge_cap", None) or base.brute_force_edge_cap,
        diagram_bfs_cap=getattr(args, "crossing_cap", None) or base.diagram_bfs_cap,
        enumeration_cap=getattr(args, "enum_cap", None) or base.enumeration_cap,
    )


def read_witness_set(path: str) -> WitnessSet:
    """Read a witness-set list: a header naming the link, then diagram files.

    Paths are resolved relative to the list file's directory.
    """
    base = Path(path).parent
    name = None
    diagrams = []
    for number, raw in enumerate(_read(path).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if name is None:
            if (
                len(fields) != 3
                or fields[0] != "witnessset"
                or fields[1] != "v1"
                or not fields[2].startswith("name=")
            ):
                raise ParseError(path, number, "expected header 'witnessset v1 name=<label>'")
            name = fields[2][len("name=") :]
            continue
        if fields[0] != "diagram" or len(fields) != 2:
            raise ParseError(path, number, "expected 'diagram <file>'")
        target = Path(fields[1])
        if not target.is_absolute():
            target = base / target
        diagrams.append(_load_diagram(str(target)))
    if name is None:
        raise ParseError(path, 1, "empty witness-set document")
    return WitnessSet(name, tuple(diagrams))


# ---------------------------------------------------------------------------
# handlers


def _sniff_kind(text: str) -> str:
    saw_spheremap = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "linkdiag":
            return "diagram"
        if fields[0] == "spheremap":
            saw_spheremap = True
            continue
        if saw_spheremap and fields[0] in ("dir", "circle"):
            return "digraph"
    return "map" if saw_spheremap else "unknown"


def cmd_validate(args) -> int:
    text = _read(args.file)
    kind = _sniff_kind(text)
    if kind == "diagram":
        d = parse_diagram(text, source=args.file)
        print(f"OK linkdiag crossings={d.crossing_count}")
    elif kind == "digraph":
        d = parse_good_digraph(text, source=args.file)
        if d.circle:
            print("OK gooddigraph circle")
        else:
            print(
                f"OK gooddigraph vertices={d.map.vertex_count} "
                f"edges={d.map.edge_count}"
            )
    elif kind == "map":
        m = parse_map(text, source=args.file)
        print(
            f"OK spheremap vertices={m.vertex_count} edges={m.edge_count} "
            f"faces={m.face_count}"
        )
    else:
        raise ParseError(args.file, 1, "unrecognized document header")
    return 0


def cmd_canon(args) -> int:
    m = _load_map(args.file)
    order = canonical_order(m, args.mode)
    perm = [0] * m.dart_count
    for label, old in enumerate(order):
        perm[old] = label
    _emit(format_map(relabel(m, perm)), args.out)
    return 0


def cmd_iso(args) -> int:
    return _decide(equivalent(_load_map(args.a), _load_map(args.b), args.mode))


def cmd_dual(args) -> int:
    _emit(format_map(dual(_load_map(args.file))), args.out)
    return 0


def cmd_medial(args) -> int:
    m, _ = medial(_load_map(args.file))
    _emit(format_map(m), args.out)
    return 0


def cmd_dm(args) -> int:
    _emit(format_good_digraph(directed_medial(_load_map(args.file))), args.out)
    return 0


def cmd_undm(args) -> int:
    g, _ = underlying_plane_graph(_load_digraph(args.file))
    _emit(format_map(g), args.out)
    return 0


def cmd_split(args) -> int:
    _emit(
        format_good_digraph(split(_load_digraph(args.file), args.vertex, args.kind)),
        args.out,
    )
    return 0


def cmd_split_reach(args) -> int:
    source = _load_digraph(args.source)
    target = _load_digraph(args.target)
    return _decide(split_reachable(target, source))


def cmd_minor(args) -> int:
    pattern = _load_map(args.pattern)
    host = _load_map(args.host)
    limits = _limits(args)
    if args.oracle:
        return _decide(brute_force_minor(pattern, host, args.mode, limits))
    answer = is_sphere_minor(pattern, host, args.mode, limits)
    if answer.result and args.witness:
        Path(args.witness).write_text(format_model(answer.witness), encoding="utf-8")
    return _decide(answer.result)


def cmd_tait(args) -> int:
    pair = tait_graphs(_load_diagram(args.file))
    if args.black is None and args.white is None:
        sys.stdout.write(format_map(pair.black))
        sys.stdout.write(format_map(pair.white))
        return 0
    if args.black:
        Path(args.black).write_text(format_map(pair.black), encoding="utf-8")
    if args.white:
        Path(args.white).write_text(format_map(pair.white), encoding="utf-8")
    return 0


def cmd_exchange(args) -> int:
    _emit(format_diagram(exchange(_load_diagram(args.file), args.crossing)), args.out)
    return 0


def cmd_smooth(args) -> int:
    _emit(
        format_diagram(smooth(_load_diagram(args.file), args.crossing, args.kind)),
        args.out,
    )
    return 0


def cmd_dleq(args) -> int:
    a = _load_diagram(args.a)
    b = _load_diagram(args.b)
    limits = _limits(args)
    if args.oracle:
        return _decide(diagram_leq_bruteforce(a, b, args.mode, limits))
    return _decide(diagram_leq(a, b, args.mode, limits))


def cmd_leadsto(args) -> int:
    d = _load_diagram(args.file)
    witnesses = read_witness_set(args.witness)
    return _decide(leadsto(d, witnesses, args.mode, _limits(args)))


def cmd_reach(args) -> int:
    d = _load_diagram(args.file)
    targets = [_load_diagram(t) for t in args.targets]
    return _decide(leadsto_target_search(d, targets, args.mode, _limits(args)))


def cmd_enumerate(args) -> int:
    limits = _limits(args)
    first = True
    for m in enumerate_connected_maps(args.max_edges, limits.enumeration_cap):
        if not first:
            sys.stdout.write("\n")
        sys.stdout.write(format_map(m))
        first = False
    return 0


def cmd_grid(args) -> int:
    _emit(format_map(make_grid(args.k)), args.out)
    return 0


def cmd_batch(args) -> int:
    parser = build_parser()
    counts = {"yes": 0, "no": 0, "ok": 0, "error": 0}
    for number, raw in enumerate(_read(args.manifest).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, detail = _run_batch_line(parser, line)
        counts[label] += 1
        suffix = f" {detail}" if detail else ""
        print(f"{number} {label.upper()}{suffix}")
    print(
        "summary yes={yes} no={no} ok={ok} error={error}".format(**counts)
    )
    return 0


def _run_batch_line(parser, line: str):
    try:
        argv = shlex.split(line, comments=True)
    except ValueError as err:
        return "error", str(err)
    if not argv:
        return "error", "empty command"
    if argv[0] == "batch":
        return "error", "batch lines cannot nest"
    quiet = io.StringIO()
    try:
        with contextlib.redirect_stdout(quiet), contextlib.redirect_stderr(quiet):
            parsed = parser.parse_args(argv)
            code = parsed.handler(parsed)
    except SystemExit:
        return "error", "unparseable command"
    except (MapError, OSError) as err:
        return "error", str(err)
    if parsed.verb in DECISION_VERBS:
        return ("yes", "") if code == 0 else ("no", "")
    return "ok", ""


# ---------------------------------------------------------------------------
# parser


def _add_mode(sub) -> None:
    sub.add_argument(
        "--mode",
        choices=sorted(MODES),
        default=REFLECTIVE,
        help="equivalence mode (default: reflective)",
    )


def _add_out(sub) -> None:
    sub.add_argument("--out", help="write the document here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphereminors",
        description="Sphere-embedded graphs: minors, medial digraphs, link diagrams.",
    )
    subs = parser.add_subparsers(dest="verb", required=True)

    s = subs.add_parser("validate", help="parse a document and report its shape")
    s.add_argument("file")
    s.set_defaults(handler=cmd_validate)

    s = subs.add_parser("canon", help="canonically relabel a map")
    s.add_argument("file")
    _add_mode(s)
    _add_out(s)
    s.set_defaults(handler=cmd_canon)

    s = subs.add_parser("iso", help="decide map equivalence")
    s.add_argument("a")
    s.add_argument("b")
    _add_mode(s)
    s.set_defaults(handler=cmd_iso)

    s = subs.add_parser("dual", help="the dual map")
    s.add_argument("file")
    _add_out(s)
    s.set_defaults(handler=cmd_dual)

    s = subs.add_parser("medial", help="the medial map")
    s.add_argument("file")
    _add_out(s)
    s.set_defaults(handler=cmd_medial)

    s = subs.add_parser("dm", help="the directed medial digraph")
    s.add_argument("file")
    _add_out(s)
    s.set_defaults(handler=cmd_dm)

    s = subs.add_parser("undm", help="the plane map under a directed medial")
    s.add_argument("file")
    _add_out(s)
    s.set_defaults(handler=cmd_undm)

    s = subs.add_parser("split", help="split one digraph vertex")
    s.add_argument("file")
    s.add_argument("--vertex", type=int, required=True)
    s.add_argument("--kind", choices=SPLIT_KINDS, required=True)
    _add_out(s)
    s.set_defaults(handler=cmd_split)

    s = subs.add_parser("split-reach", help="decide split reachability")
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(handler=cmd_split_reach)

    s = subs.add_parser("minor", help="decide sphere-minor containment")
    s.add_argument("pattern")
    s.add_argument("host")
    _add_mode(s)
    s.add_argument("--witness", help="write the carving witness here on YES")
    s.add_argument("--oracle", action="store_true", help="use the exhaustive oracle")
    s.add_argument("--node-budget", type=int, help="search node budget")
    s.add_argument("--edge-cap", type=int, help="oracle host-edge cap")
    s.set_defaults(handler=cmd_minor)

    s = subs.add_parser("tait", help="both Tait maps of a diagram")
    s.add_argument("file")
    s.add_argument("--black", help="write the black Tait map here")
    s.add_argument("--white", help="write the white Tait map here")
    s.set_defaults(handler=cmd_tait)

    s = subs.add_parser("exchange", help="flip one crossing")
    s.add_argument("file")
    s.add_argument("--crossing", type=int, required=True)
    _add_out(s)
    s.set_defaults(handler=cmd_exchange)

    s = subs.add_parser("smooth", help="smooth one crossing")
    s.add_argument("file")
    s.add_argument("--crossing", type=int, required=True)
    s.add_argument("--kind", choices=SMOOTHING_KINDS, required=True)
    _add_out(s)
    s.set_defaults(handler=cmd_smooth)

    s = subs.add_parser("dleq", help="decide the diagram order")
    s.add_argument("a")
    s.add_argument("b")
    _add_mode(s)
    s.add_argument("--oracle", action="store_true", help="use the search oracle")
    s.add_argument("--crossing-cap", type=int, help="oracle crossing cap")
    s.add_argument("--node-budget", type=int, help="minor search node budget")
    s.set_defaults(handler=cmd_dleq)

    s = subs.add_parser("leadsto", help="decide reachability into a witness set")
    s.add_argument("file")
    s.add_argument("--witness", required=True, help="witness-set list file")
    _add_mode(s)
    s.add_argument("--node-budget", type=int, help="minor search node budget")
    s.set_defaults(handler=cmd_leadsto)

    s = subs.add_parser("reach", help="search for explicit target diagrams")
    s.add_argument("file")
    s.add_argument("--targets", nargs="+", required=True, help="target diagram files")
    _add_mode(s)
    s.add_argument("--crossing-cap", type=int, help="search crossing cap")
    s.set_defaults(handler=cmd_reach)

    s = subs.add_parser("enumerate", help="stream the small-map corpus")
    s.add_argument("--max-edges", type=int, required=True)
    s.add_argument("--enum-cap", type=int, help="raise the corpus size cap")
    s.set_defaults(handler=cmd_enumerate)

    s = subs.add_parser("grid", help="emit a k-by-k grid map")
    s.add_argument("k", type=int)
    _add_out(s)
    s.set_defaults(handler=cmd_grid)

    s = subs.add_parser("batch", help="run a manifest of command lines")
    s.add_argument("manifest")
    s.set_defaults(handler=cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (MapError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
