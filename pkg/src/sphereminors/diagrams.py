"""Link diagrams on the sphere and the orders between them.

A link diagram is a connected 4-regular sphere map — the projection —
together with, at each vertex (crossing), a marker saying which of the
two opposite dart pairs is the strand passing over.  Exchanging a
crossing flips its marker; smoothing replaces a crossing by one of the
two planar reconnections, named here by which checkerboard colour loses
an edge.

The faces of any projection admit a checkerboard 2-colouring, and
contracting the projection onto one colour class yields that colour's
Tait map: a plane graph with a vertex per face of the colour and an edge
through each crossing.  The two Tait maps are duals of each other and
their medial recovers the projection, so a diagram is, up to the crossing
markers, the same data as either of its Tait maps.

Smoothing translates through this dictionary into deleting the crossing's
edge in one Tait map while contracting it in the other, and exchanges do
not touch the projection at all.  The order "B reaches A by a sequence of
exchanges and smoothings" therefore coincides with a sphere-minor test
between Tait maps; :func:`diagram_leq` decides it that way, while
:func:`diagram_leq_bruteforce` replays the sequence semantics directly by
breadth-first search as an independent oracle.  Reachability into a
finite set of target diagrams is the same question, one member at a time
(:func:`leadsto`, :func:`leadsto_target_search`).

Diagrams with split (disconnected) projections are never produced: a
smoothing that would disconnect the projection, or detach a closed
crossing-free strand, is refused.  The crossing-free round diagram is
admitted as the single degenerate terminal object.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .medial import checkerboard, colour_restriction, medial
from .minors import Limits, is_sphere_minor
from .sphere_map import (
    MODES,
    ORIENTED,
    REFLECTIVE,
    CanonicalCode,
    CapExceeded,
    MapError,
    ParseError,
    SphereMap,
    WouldDisconnect,
    _traversal,
    canonical_form,
    smooth_vertex,
    validate,
)

__all__ = [
    "BLACK_DELETE",
    "Crossing",
    "EmptyWitnessSet",
    "InvalidDiagram",
    "LinkDiagram",
    "ROUND_CODE",
    "SMOOTHING_KINDS",
    "TaitPair",
    "UnknownCrossing",
    "WHITE_DELETE",
    "WitnessSet",
    "alternating_diagram",
    "diagram_code",
    "diagram_leq",
    "diagram_leq_bruteforce",
    "enumerate_diagrams",
    "enumerate_projections",
    "equivalent_diagrams",
    "exchange",
    "format_diagram",
    "leadsto",
    "leadsto_target_search",
    "mirror_diagram",
    "one_crossing_unknot",
    "parse_diagram",
    "projection",
    "smooth",
    "tait_graphs",
    "trefoil_diagram",
    "validate_diagram",
    "zero_crossing_diagram",
]

BLACK_DELETE = "black_delete"
WHITE_DELETE = "white_delete"
SMOOTHING_KINDS = (BLACK_DELETE, WHITE_DELETE)

#: Sentinel canonical code of the crossing-free round diagram.
ROUND_CODE = (-1,)


class InvalidDiagram(MapError):
    pass


class UnknownCrossing(MapError):
    pass


class EmptyWitnessSet(MapError):
    pass


@dataclass(frozen=True)
class Crossing:
    """One crossing: four darts counterclockwise plus the over marker.

    ``over`` is 0 or 1 and selects the opposite dart pair
    ``(darts[over], darts[over + 2])`` as the strand passing over.
    """

    darts: tuple
    over: int = 0

    def __post_init__(self):
        if len(self.darts) != 4 or len(set(self.darts)) != 4:
            raise InvalidDiagram(f"crossing needs four distinct darts, got {self.darts}")
        if self.over not in (0, 1):
            raise InvalidDiagram(f"over marker must be 0 or 1, got {self.over}")

    @property
    def over_darts(self) -> tuple:
        return (self.darts[self.over], self.darts[self.over + 2])


@dataclass(frozen=True)
class LinkDiagram:
    """Crossings plus the strand pairing joining their dart stubs.

    ``pairing`` is an alpha-style fixed-point-free involution on all
    crossing darts; the crossing rotations and the pairing together form
    the projection map.  The empty diagram (no crossings) stands for the
    round crossing-free curve.
    """

    crossings: tuple
    pairing: tuple

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def is_round(self) -> bool:
        return not self.crossings


def zero_crossing_diagram() -> LinkDiagram:
    """The round crossing-free diagram, the terminal object of the order."""
    return LinkDiagram((), ())


def validate_diagram(d: LinkDiagram) -> None:
    """Check dart bookkeeping and that the projection is a sphere map."""
    if d.is_round:
        if d.pairing:
            raise InvalidDiagram("a diagram without crossings cannot pair darts")
        return
    n = d.crossing_count
    claimed = [x for c in d.crossings for x in c.darts]
    if sorted(claimed) != list(range(4 * n)):
        raise InvalidDiagram(
            f"crossing darts must partition 0..{4 * n - 1}, got {sorted(claimed)}"
        )
    if len(d.pairing) != 4 * n:
        raise InvalidDiagram(
            f"pairing covers {len(d.pairing)} darts, expected {4 * n}"
        )
    p = projection(d)
    problems = validate(p)
    if problems:
        raise InvalidDiagram(f"projection is not a sphere map: {problems[0]}")


def projection(d: LinkDiagram) -> SphereMap:
    """Forget the over markers: the 4-regular map under the diagram."""
    if d.is_round:
        return SphereMap((), ())
    sigma = [0] * (4 * d.crossing_count)
    for c in d.crossings:
        a, b, cc, dd = c.darts
        sigma[a], sigma[b], sigma[cc], sigma[dd] = b, cc, dd, a
    return SphereMap(sigma, d.pairing, check=False)


def _crossing_vertices(d: LinkDiagram) -> tuple:
    """Projection vertex name of each crossing, in crossing order."""
    return tuple(min(c.darts) for c in d.crossings)


def _over_flags(d: LinkDiagram) -> tuple:
    """Per projection dart: does it lie on the over strand of its crossing?"""
    flags = [False] * (4 * d.crossing_count)
    for c in d.crossings:
        for x in c.over_darts:
            flags[x] = True
    return tuple(flags)


# ---------------------------------------------------------------------------
# equivalence


def diagram_code(d: LinkDiagram, mode: str = ORIENTED) -> CanonicalCode:
    """Canonical code of a diagram under relabelling of the sphere.

    Oriented equivalence (the default) admits only orientation-preserving
    relabellings; reflective equivalence also admits the mirror image,
    which reverses every rotation but keeps each over pair an over pair.
    The round diagram gets a sentinel code.
    """
    if mode not in MODES:
        raise ValueError(f"unknown equivalence mode {mode!r}")
    if d.is_round:
        return CanonicalCode(ROUND_CODE, mode)
    p = projection(d)
    flags = _over_flags(d)
    variants = [p.sigma]
    if mode == REFLECTIVE:
        variants.append(p.sigma_inv)
    best = None
    for sig in variants:
        for root in range(p.dart_count):
            trav, order = _traversal(sig, p.alpha, root, None, True)
            code = trav + tuple(int(flags[x]) for x in order)
            if best is None or code < best:
                best = code
    return CanonicalCode(best, mode)


def equivalent_diagrams(a: LinkDiagram, b: LinkDiagram, mode: str = ORIENTED) -> bool:
    if a.is_round or b.is_round:
        return a.is_round and b.is_round
    if a.crossing_count != b.crossing_count:
        return False
    return diagram_code(a, mode) == diagram_code(b, mode)


def mirror_diagram(d: LinkDiagram) -> LinkDiagram:
    """The diagram redrawn mirror-image: rotations reverse, markers ride along."""
    if d.is_round:
        return d
    crossings = tuple(
        Crossing((c.darts[0], c.darts[3], c.darts[2], c.darts[1]), c.over)
        for c in d.crossings
    )
    return LinkDiagram(crossings, d.pairing)


# ---------------------------------------------------------------------------
# local moves


def _require_crossing(d: LinkDiagram, index: int) -> None:
    if not 0 <= index < d.crossing_count:
        raise UnknownCrossing(
            f"diagram has {d.crossing_count} crossings, none numbered {index}"
        )


def exchange(d: LinkDiagram, index: int) -> LinkDiagram:
    """Flip the over marker of one crossing; the projection is untouched."""
    _require_crossing(d, index)
    crossings = list(d.crossings)
    c = crossings[index]
    crossings[index] = Crossing(c.darts, 1 - c.over)
    return LinkDiagram(tuple(crossings), d.pairing)


def _board(p: SphereMap):
    """The checkerboard colouring used throughout, seeded at dart 0."""
    return checkerboard(p, black_dart=0)


def smooth(d: LinkDiagram, index: int, kind: str) -> LinkDiagram:
    """Replace one crossing by a planar reconnection.

    ``black_delete`` opens the channel between the two white corners, so
    the black Tait map loses the crossing's edge while the white one has
    it contracted; ``white_delete`` is the other reconnection.  Refuses
    with :class:`WouldDisconnect` when the projection would fall apart or
    a closed crossing-free strand would detach.
    """
    if kind not in SMOOTHING_KINDS:
        raise ValueError(f"smoothing kind must be one of {SMOOTHING_KINDS}, got {kind!r}")
    _require_crossing(d, index)
    p = projection(d)
    board = _board(p)
    v = _crossing_vertices(d)[index]
    r0, r1, r2, r3 = p.vertex_darts(v)
    # the reconnection bending around the corners entered before r1 and r3
    # (equivalently: merging the other two corners into one region)
    encloses_black = p.face_of(r1) in board.black
    if (kind == BLACK_DELETE) == encloses_black:
        matching = {r0: r1, r1: r0, r2: r3, r3: r2}
    else:
        matching = {r1: r2, r2: r1, r3: r0, r0: r3}
    result, relabel, circles = smooth_vertex(p, v, matching)
    if result is None:
        if circles == 1:
            return zero_crossing_diagram()
        raise WouldDisconnect(
            f"smoothing crossing {index} splits the diagram into {circles} closed curves"
        )
    if circles:
        raise WouldDisconnect(
            f"smoothing crossing {index} detaches a closed crossing-free strand"
        )
    if validate(result):
        raise WouldDisconnect(
            f"smoothing crossing {index} disconnects the projection"
        )
    crossings = tuple(
        Crossing(tuple(relabel[x] for x in c.darts), c.over)
        for i, c in enumerate(d.crossings)
        if i != index
    )
    return LinkDiagram(crossings, result.alpha)


# ---------------------------------------------------------------------------
# Tait maps


@dataclass(frozen=True)
class TaitPair:
    """The two colour contractions of a projection, with edge bookkeeping.

    ``black_edge_of[i]`` / ``white_edge_of[i]`` name the edge of each
    Tait map passing through crossing ``i``.  The pair is unordered in
    spirit — which colour is "black" depends only on the seeding
    convention of :func:`smooth` — and the two maps are duals.
    """

    black: SphereMap
    white: SphereMap
    black_edge_of: tuple
    white_edge_of: tuple

    @property
    def maps(self) -> tuple:
        return (self.black, self.white)


def tait_graphs(d: LinkDiagram) -> TaitPair:
    """Contract the projection onto each checkerboard colour class."""
    if d.is_round:
        degenerate = SphereMap((), ())
        return TaitPair(degenerate, degenerate, (), ())
    p = projection(d)
    board = _board(p)
    black, through_black = colour_restriction(p, board.black)
    white, through_white = colour_restriction(p, board.white)
    vertices = _crossing_vertices(d)
    return TaitPair(
        black,
        white,
        tuple(through_black[v] for v in vertices),
        tuple(through_white[v] for v in vertices),
    )


# ---------------------------------------------------------------------------
# the diagram order


def diagram_leq(
    a: LinkDiagram,
    b: LinkDiagram,
    mode: str = REFLECTIVE,
    limits: Limits | None = None,
) -> bool:
    """Does some exchange/smoothing sequence take ``b`` to ``a``?

    Decided through the Tait dictionary: one colour of ``a`` is tested
    as a sphere minor against both colours of ``b`` (the other colour of
    ``a`` adds nothing, being the dual of the first).  ``mode`` is the
    equivalence used by the minor tests.
    """
    ta = tait_graphs(a)
    tb = tait_graphs(b)
    return bool(
        is_sphere_minor(ta.black, tb.black, mode, limits)
        or is_sphere_minor(ta.black, tb.white, mode, limits)
    )


def _diagram_children(d: LinkDiagram):
    for i in range(d.crossing_count):
        yield exchange(d, i)
        for kind in SMOOTHING_KINDS:
            try:
                yield smooth(d, i, kind)
            except WouldDisconnect:
                pass


@lru_cache(maxsize=1024)
def _diagram_closure(d: LinkDiagram, mode: str) -> frozenset:
    """Codes of every diagram reachable from ``d``, itself included."""
    seen = {diagram_code(d, mode).code}
    frontier = [d]
    while frontier:
        current = frontier.pop()
        for child in _diagram_children(current):
            code = diagram_code(child, mode).code
            if code not in seen:
                seen.add(code)
                frontier.append(child)
    return frozenset(seen)


def diagram_leq_bruteforce(
    a: LinkDiagram,
    b: LinkDiagram,
    mode: str = REFLECTIVE,
    limits: Limits | None = None,
) -> bool:
    """Replay the sequence semantics directly: breadth-first search.

    Explores every exchange/smoothing sequence out of ``b`` and compares
    the results against ``a`` by diagram equivalence.  The default is
    reflective, matching :func:`diagram_leq`: four-crossing projections
    exist that differ from their mirror image by orientation-preserving
    relabellings alone, and on those an orientation-sensitive comparison
    would part ways with any decision made through Tait maps, which
    cannot see the difference between a diagram and its mirror.  Pass
    ``mode="oriented"`` for the finer, orientation-sensitive search.
    Exponential in the crossing count, hence capped.
    """
    limits = limits or Limits()
    if b.crossing_count > limits.diagram_bfs_cap:
        raise CapExceeded(
            f"diagram search from {b.crossing_count} crossings exceeds the "
            f"cap of {limits.diagram_bfs_cap}"
        )
    return diagram_code(a, mode).code in _diagram_closure(b, mode)


@dataclass(frozen=True)
class WitnessSet:
    """A finite set of diagrams standing for a link's reachable class.

    The reduction implemented here trusts the set: reachability into the
    link is decided as "some member compares below the query diagram".
    Whether the set really generates the link's class is knot-theoretic
    input this library does not check.
    """

    link_name: str
    diagrams: tuple


def leadsto(
    d: LinkDiagram,
    witnesses: WitnessSet,
    mode: str = REFLECTIVE,
    limits: Limits | None = None,
) -> bool:
    """Does some exchange/smoothing sequence from ``d`` land in the link?"""
    if not witnesses.diagrams:
        raise EmptyWitnessSet(
            f"witness set {witnesses.link_name!r} contains no diagrams"
        )
    return any(diagram_leq(w, d, mode, limits) for w in witnesses.diagrams)


def leadsto_target_search(
    d: LinkDiagram,
    targets,
    mode: str = REFLECTIVE,
    limits: Limits | None = None,
) -> bool:
    """Search the sequences from ``d`` for any of the target diagrams.

    The direct counterpart of :func:`leadsto` for explicitly listed
    targets, used to sanity-check witness sets on small examples; same
    cap as :func:`diagram_leq_bruteforce`.
    """
    limits = limits or Limits()
    if d.crossing_count > limits.diagram_bfs_cap:
        raise CapExceeded(
            f"diagram search from {d.crossing_count} crossings exceeds the "
            f"cap of {limits.diagram_bfs_cap}"
        )
    closure = _diagram_closure(d, mode)
    return any(diagram_code(t, mode).code in closure for t in targets)


# ---------------------------------------------------------------------------
# constructions


def _diagram_on(p: SphereMap, over_of_vertex) -> LinkDiagram:
    """Dress a 4-regular map with over markers given per vertex name."""
    crossings = tuple(
        Crossing(p.vertex_darts(v), over_of_vertex(v)) for v in p.vertex_ids()
    )
    return LinkDiagram(crossings, p.alpha)


def one_crossing_unknot(over: int = 0) -> LinkDiagram:
    """The kinked round curve: one crossing, two edges, three faces."""
    return LinkDiagram((Crossing((0, 1, 2, 3), over),), (1, 0, 3, 2))


def alternating_diagram(g: SphereMap) -> LinkDiagram:
    """The alternating diagram whose projection is the medial of ``g``.

    At every crossing the over marker picks the dart pair whose corners
    lie in the black colour class; making the same choice relative to the
    colouring everywhere is exactly what alternation means.
    """
    if g.is_degenerate:
        return zero_crossing_diagram()
    p, _ = medial(g)
    board = _board(p)

    def over_of(v: int) -> int:
        return 0 if p.face_of(p.vertex_darts(v)[0]) in board.black else 1

    return _diagram_on(p, over_of)


def trefoil_diagram() -> LinkDiagram:
    """The standard alternating three-crossing diagram."""
    from .sphere_map import cycle_map

    return alternating_diagram(cycle_map(3))


@lru_cache(maxsize=None)
def enumerate_projections(crossings: int) -> tuple:
    """All connected 4-regular sphere maps with the given vertex count.

    One representative per oriented class.  Every such map arises as the
    medial of a map with ``crossings`` edges (contract either colour of
    its checkerboard), so the corpus of small maps generates them all.
    """
    from .sphere_map import enumerate_connected_maps

    if crossings < 1:
        raise MapError("projections need at least one crossing")
    out = []
    seen = set()
    for g in enumerate_connected_maps(crossings):
        if g.edge_count != crossings:
            continue
        p, _ = medial(g)
        code = canonical_form(p, ORIENTED).code
        if code not in seen:
            seen.add(code)
            out.append(p)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_diagrams(crossings: int) -> tuple:
    """All diagrams with the given crossing count, one per oriented class."""
    out = []
    seen = set()
    for p in enumerate_projections(crossings):
        vertices = p.vertex_ids()
        for bits in product((0, 1), repeat=len(vertices)):
            over = dict(zip(vertices, bits))
            d = _diagram_on(p, over.__getitem__)
            code = diagram_code(d, ORIENTED).code
            if code not in seen:
                seen.add(code)
                out.append(d)
    return tuple(out)


# ---------------------------------------------------------------------------
# text format


def format_diagram(d: LinkDiagram) -> str:
    """Serialize: header, one crossing line each, then the strand pairs."""
    lines = [f"linkdiag v1 crossings={d.crossing_count}"]
    for i, c in enumerate(d.crossings):
        darts = ",".join(str(x) for x in c.darts)
        lines.append(f"x {i} darts={darts} over={'ab'[c.over]}")
    for x, y in sorted((x, y) for x, y in enumerate(d.pairing) if x < y):
        lines.append(f"s {x} {y}")
    return "\n".join(lines) + "\n"


def parse_diagram(text: str, source: str = "<string>") -> LinkDiagram:
    """Parse the text format of :func:`format_diagram`; strict."""
    lines = text.splitlines()
    header = None
    crossings = {}
    pairs = []
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "linkdiag" or len(fields) != 3 or fields[1] != "v1":
                raise ParseError(source, number, "expected header 'linkdiag v1 crossings=<n>'")
            if not fields[2].startswith("crossings="):
                raise ParseError(source, number, f"expected crossings=<n>, got {fields[2]!r}")
            try:
                header = int(fields[2][len("crossings=") :])
            except ValueError:
                raise ParseError(source, number, f"bad crossing count {fields[2]!r}")
            if header < 0:
                raise ParseError(source, number, "crossing count cannot be negative")
            continue
        if fields[0] == "x":
            if len(fields) != 4:
                raise ParseError(source, number, "crossing line needs 'x <id> darts=... over=...'")
            try:
                index = int(fields[1])
            except ValueError:
                raise ParseError(source, number, f"bad crossing id {fields[1]!r}")
            if index in crossings:
                raise ParseError(source, number, f"crossing {index} defined twice")
            if not fields[2].startswith("darts="):
                raise ParseError(source, number, f"expected darts=<a,b,c,d>, got {fields[2]!r}")
            try:
                darts = tuple(int(x) for x in fields[2][len("darts=") :].split(","))
            except ValueError:
                raise ParseError(source, number, f"bad dart list {fields[2]!r}")
            if fields[3] not in ("over=a", "over=b"):
                raise ParseError(source, number, f"expected over=a or over=b, got {fields[3]!r}")
            try:
                crossings[index] = Crossing(darts, 0 if fields[3] == "over=a" else 1)
            except InvalidDiagram as exc:
                raise ParseError(source, number, str(exc))
        elif fields[0] == "s":
            if len(fields) != 3:
                raise ParseError(source, number, "strand line needs 's <dart> <dart>'")
            try:
                pairs.append((int(fields[1]), int(fields[2])))
            except ValueError:
                raise ParseError(source, number, "strand line needs two dart numbers")
        else:
            raise ParseError(source, number, f"unknown line kind {fields[0]!r}")
    if header is None:
        raise ParseError(source, 1, "empty document")
    if sorted(crossings) != list(range(header)):
        raise ParseError(
            source, len(lines), f"expected crossings 0..{header - 1}, got {sorted(crossings)}"
        )
    pairing = [-1] * (4 * header)
    for x, y in pairs:
        for z in (x, y):
            if not 0 <= z < 4 * header:
                raise ParseError(source, len(lines), f"dart {z} out of range")
        if x == y or pairing[x] != -1 or pairing[y] != -1:
            raise ParseError(source, len(lines), f"strand pair {x} {y} conflicts with earlier pairs")
        pairing[x], pairing[y] = y, x
    if header and -1 in pairing:
        raise ParseError(source, len(lines), f"dart {pairing.index(-1)} is never paired")
    d = LinkDiagram(tuple(crossings[i] for i in range(header)), tuple(pairing))
    try:
        validate_diagram(d)
    except MapError as exc:
        raise ParseError(source, len(lines), str(exc))
    return d
