"""Medial 4-regular maps, their directed form, and vertex splits.

The medial of a sphere map ``g`` has one 4-valent vertex per edge of ``g``
and one edge per corner of ``g``.  On darts it is generated directly: dart
``d`` of ``g`` spawns medial darts ``2d`` and ``2d + 1``, the medial
vertex of edge ``{d, alpha(d)}`` carries the rotation
``(2d, 2d+1, 2*alpha(d), 2*alpha(d)+1)``, and the medial edge pairing
sends ``2d`` to ``2*sigma(d) + 1``.

Orienting every medial edge from its even dart (tail) to its odd dart
(head) makes each vertex alternate out/in around its rotation and makes
every face boundary direction-constant.  The all-incoming faces surround
the vertices of ``g``; the all-outgoing faces sit inside the faces of
``g``.  Any sphere map carrying such an orientation -- 4-regular,
alternating at every vertex, heads opposite tails across each edge -- is
called a good digraph here, and restricting it to its all-incoming faces
recovers a plane map; on a directed medial that recovery returns the
source map dart-for-dart.

A good digraph may instead be the degenerate closed curve with no vertex
at all (``circle=True``); it plays the role of the directed medial of the
degenerate single-vertex map.

Splitting replaces one vertex by a direction-respecting rejoining of its
four strand ends.  The two rejoinings are named by the chords they draw
across the rotation ``(d0, d1, d2, d3)`` (listed from the smallest dart):
``adjacent`` joins ``d0--d1`` and ``d2--d3``, ``skew`` joins ``d1--d2``
and ``d3--d0``.  A split that would disconnect the digraph, or strand it
into more than one closed curve, is refused; consuming the last vertex
into a single closed curve yields the degenerate circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .sphere_map import (
    MODES,
    ORIENTED,
    REFLECTIVE,
    CanonicalCode,
    MapError,
    ParseError,
    SphereMap,
    WouldDisconnect,
    _traversal,
    smooth_vertex,
    validate,
)

ADJACENT = "adjacent"
SKEW = "skew"
SPLIT_KINDS = (ADJACENT, SKEW)


class NotGoodDigraph(MapError):
    pass


class NotFaceBipartite(MapError):
    pass


@dataclass(frozen=True)
class GoodDigraph:
    """A 4-regular properly-directed sphere map, or the degenerate circle.

    ``outgoing[d]`` is True when dart ``d`` points away from its vertex.
    """

    map: SphereMap
    outgoing: tuple
    circle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "outgoing", tuple(bool(b) for b in self.outgoing))
        problems = validate_digraph(self)
        if problems:
            raise NotGoodDigraph("; ".join(problems))

    @property
    def vertex_count(self) -> int:
        return 0 if self.circle else self.map.vertex_count

    def __repr__(self) -> str:
        if self.circle:
            return "GoodDigraph(circle)"
        return f"GoodDigraph(V={self.map.vertex_count})"


def validate_digraph(d: GoodDigraph) -> list:
    """Diagnostics for the good-digraph invariants; empty means valid."""
    if d.circle:
        problems = []
        if not d.map.is_degenerate:
            problems.append("circle digraph must carry the degenerate map")
        if d.outgoing:
            problems.append("circle digraph has no darts to direct")
        return problems
    m = d.map
    if m.is_degenerate:
        return ["degenerate map without the circle flag"]
    if len(d.outgoing) != m.dart_count:
        return [f"{len(d.outgoing)} direction bits for {m.dart_count} darts"]
    problems = []
    if any(len(v) != 4 for v in m.vertices()):
        problems.append("not 4-regular")
    if any(d.outgoing[x] == d.outgoing[m.alpha[x]] for x in range(m.dart_count)):
        problems.append("some edge does not run tail to head")
    if any(d.outgoing[x] == d.outgoing[m.sigma[x]] for x in range(m.dart_count)):
        problems.append("directions do not alternate around some vertex")
    return problems


# ---------------------------------------------------------------------------
# medial construction


def medial(g: SphereMap):
    """The medial map of ``g`` plus the edge-to-vertex correspondence.

    Returns ``(m, at)`` where ``at[e]`` is the medial vertex sitting on
    edge ``e`` of ``g``.
    """
    if g.is_degenerate:
        raise MapError(
            "the degenerate map has no medial map; its directed medial is a circle"
        )
    n = g.dart_count
    sigma = [0] * (2 * n)
    alpha = [0] * (2 * n)
    for d in range(n):
        sigma[2 * d] = 2 * d + 1
        sigma[2 * d + 1] = 2 * g.alpha[d]
        alpha[2 * d] = 2 * g.sigma[d] + 1
        alpha[2 * g.sigma[d] + 1] = 2 * d
    m = SphereMap(sigma, alpha)
    at = {e: 2 * e for e in g.edge_ids()}
    return m, at


def directed_medial(g: SphereMap) -> GoodDigraph:
    """The medial of ``g`` with every edge directed tail-even, head-odd."""
    if g.is_degenerate:
        return GoodDigraph(SphereMap((), ()), (), circle=True)
    m, _ = medial(g)
    return GoodDigraph(m, tuple(d % 2 == 0 for d in range(m.dart_count)))


def colour_restriction(m: SphereMap, chosen_faces):
    """Contract a 4-regular checkerboarded map onto one colour class.

    ``chosen_faces`` lists face names of one colour class; each chosen
    face becomes a vertex whose rotation is the face boundary walked
    against the face permutation, and each vertex of ``m`` becomes an edge
    joining the two chosen corners through it.  Returns ``(graph, through)``
    with ``through[v]`` the edge of the result crossing vertex ``v``.
    """
    chosen = set(chosen_faces)
    ids = set(m.face_ids())
    if not chosen <= ids:
        raise MapError("chosen faces are not face names of the map")
    keep = [d for d in range(m.dart_count) if m.face_of(d) in chosen]
    if not keep:
        raise MapError("no darts on the chosen faces")
    phi = m.phi
    phi_inv = [0] * m.dart_count
    for d, e in enumerate(phi):
        phi_inv[e] = d
    new_id = {d: i for i, d in enumerate(keep)}
    sigma = [new_id[phi_inv[d]] for d in keep]
    alpha = [new_id[m.sigma[m.sigma[d]]] for d in keep]
    graph = SphereMap(sigma, alpha)
    through = {}
    for v in m.vertex_ids():
        through_darts = [new_id[d] for d in m.vertex_darts(v) if d in new_id]
        if len(through_darts) != 2:
            raise MapError(f"vertex {v} does not touch the chosen colour exactly twice")
        through[v] = min(through_darts)
    return graph, through


def underlying_plane_graph(d: GoodDigraph):
    """The plane map whose directed medial ``d`` is.

    Returns ``(g, through)`` with ``through[v]`` the edge of ``g`` on
    which vertex ``v`` of the digraph sits.  Feeding a directed medial
    back in recovers the source map dart-for-dart.
    """
    if d.circle:
        return SphereMap((), ()), {}
    sinks = [f for f in d.map.face_ids() if not d.outgoing[f]]
    # faces are direction-constant: a face named by an incoming dart is all-in
    return colour_restriction(d.map, sinks)


# ---------------------------------------------------------------------------
# checkerboard colouring


@dataclass(frozen=True)
class Checkerboard:
    """A proper 2-colouring of the faces of a map."""

    black: frozenset
    white: frozenset


def checkerboard(m: SphereMap, black_dart: int = 1) -> Checkerboard:
    """2-colour the faces so adjacent faces differ; raises if impossible.

    The colour class of the face holding ``black_dart`` is black.  On a
    medial map built here the odd darts lie on the faces surrounding the
    source map's vertices, so the default seed paints those faces black.
    """
    if m.is_degenerate:
        raise MapError("degenerate map has no checkerboard colouring")
    if not 0 <= black_dart < m.dart_count:
        raise MapError(f"dart {black_dart} out of range")
    orbit_of = {min(face): face for face in m.faces()}
    colour = {}
    seed = m.face_of(black_dart)
    colour[seed] = 0
    queue = [seed]
    while queue:
        f = queue.pop()
        for d in orbit_of[f]:
            g = m.face_of(m.alpha[d])
            if g not in colour:
                colour[g] = 1 - colour[f]
                queue.append(g)
            elif colour[g] == colour[f]:
                raise NotFaceBipartite("two faces of the same colour share an edge")
    if len(colour) != m.face_count:
        raise MapError("face adjacency is disconnected")  # unreachable on valid maps
    return Checkerboard(
        frozenset(f for f, c in colour.items() if c == 0),
        frozenset(f for f, c in colour.items() if c == 1),
    )


# ---------------------------------------------------------------------------
# digraph equivalence


def reverse_digraph(d: GoodDigraph) -> GoodDigraph:
    """All arrows flipped."""
    if d.circle:
        return d
    return GoodDigraph(d.map, tuple(not b for b in d.outgoing))


def mirror_digraph(d: GoodDigraph) -> GoodDigraph:
    """The digraph redrawn mirror-image; arrows also flip.

    An orientation-reversing homeomorphism carries a directed medial to
    the directed medial of the mirrored source map only if arrowheads are
    exchanged with tails at the same time, so reflection of good digraphs
    is defined as mirror-plus-reverse.
    """
    if d.circle:
        return d
    from .sphere_map import mirror as mirror_map

    return GoodDigraph(mirror_map(d.map), tuple(not b for b in d.outgoing))


CIRCLE_CODE = (-1,)


def digraph_code(d: GoodDigraph, mode: str = REFLECTIVE) -> CanonicalCode:
    """Canonical code of a good digraph under the chosen equivalence.

    Oriented equivalence relabels darts only; reflective equivalence also
    admits the mirror-plus-reverse transformation (see
    :func:`mirror_digraph`).  The degenerate circle gets a sentinel code.
    """
    if mode not in MODES:
        raise ValueError(f"unknown equivalence mode {mode!r}")
    if d.circle:
        return CanonicalCode(CIRCLE_CODE, mode)
    m = d.map
    n = m.dart_count
    variants = [(m.sigma, d.outgoing)]
    if mode == REFLECTIVE:
        variants.append((m.sigma_inv, tuple(not b for b in d.outgoing)))
    best = None
    for sig, bits in variants:
        for root in range(n):
            trav, order = _traversal(sig, m.alpha, root, None, True)
            code = trav + tuple(int(bits[x]) for x in order)
            if best is None or code < best:
                best = code
    return CanonicalCode(best, mode)


def equivalent_digraphs(a: GoodDigraph, b: GoodDigraph, mode: str = REFLECTIVE) -> bool:
    if a.circle or b.circle:
        return a.circle and b.circle
    if a.map.dart_count != b.map.dart_count:
        return False
    return digraph_code(a, mode) == digraph_code(b, mode)


# ---------------------------------------------------------------------------
# splits


def _split_pairing(d: GoodDigraph, vertex: int, kind: str) -> dict:
    ring = d.map.vertex_darts(vertex)
    if kind == ADJACENT:
        chords = [(ring[0], ring[1]), (ring[2], ring[3])]
    elif kind == SKEW:
        chords = [(ring[1], ring[2]), (ring[3], ring[0])]
    else:
        raise ValueError(f"unknown split kind {kind!r}")
    pairing = {}
    for x, y in chords:
        pairing[x] = y
        pairing[y] = x
    return pairing


def split(d: GoodDigraph, vertex: int, kind: str) -> GoodDigraph:
    """Split one vertex of the digraph in the named way.

    Raises :class:`WouldDisconnect` when the strands fall apart; returns
    the degenerate circle when the last vertex closes into one curve.
    """
    if d.circle:
        raise MapError("the circle has no vertex to split")
    pairing = _split_pairing(d, vertex, kind)
    result, moved, circles = smooth_vertex(d.map, vertex, pairing)
    if result is None:
        if circles == 1:
            return GoodDigraph(SphereMap((), ()), (), circle=True)
        raise WouldDisconnect(f"split would leave {circles} separate closed curves")
    if circles:
        raise WouldDisconnect("split would detach a closed curve")
    problems = validate(result)
    if problems:
        raise WouldDisconnect("; ".join(problems))
    bits = [False] * result.dart_count
    for old, new in moved.items():
        bits[new] = d.outgoing[old]
    return GoodDigraph(result, tuple(bits))


def split_children(d: GoodDigraph):
    """All digraphs reachable by one admissible split, with repeats."""
    if d.circle:
        return []
    out = []
    for v in d.map.vertex_ids():
        for kind in SPLIT_KINDS:
            try:
                out.append(split(d, v, kind))
            except WouldDisconnect:
                continue
    return out


@lru_cache(maxsize=4096)
def _split_closure_from(code_key):
    sigma, alpha, bits = code_key
    start = GoodDigraph(SphereMap(sigma, alpha), bits) if sigma else GoodDigraph(
        SphereMap((), ()), (), circle=True
    )
    seen = {digraph_code(start).code: start}
    frontier = [start]
    while frontier:
        nxt = []
        for d in frontier:
            for child in split_children(d):
                code = digraph_code(child).code
                if code not in seen:
                    seen[code] = child
                    nxt.append(child)
        frontier = nxt
    return frozenset(seen)


def split_closure(d: GoodDigraph) -> frozenset:
    """Reflective codes of every digraph reachable by splits (self included)."""
    if d.circle:
        return frozenset({CIRCLE_CODE})
    return _split_closure_from((d.map.sigma, d.map.alpha, d.outgoing))


def split_reachable(target: GoodDigraph, source: GoodDigraph) -> bool:
    """Whether some split sequence carries ``source`` onto ``target``.

    Reachability is judged up to reflective digraph equivalence, and the
    empty sequence counts, so a digraph reaches itself.
    """
    return digraph_code(target).code in split_closure(source)


# ---------------------------------------------------------------------------
# text format


def format_good_digraph(d: GoodDigraph) -> str:
    from .sphere_map import format_map

    if d.circle:
        return "spheremap v1 darts=0\ncircle\n"
    lines = [format_map(d.map).rstrip("\n")]
    for x in range(d.map.dart_count):
        lines.append(f"dir {x} {'out' if d.outgoing[x] else 'in'}")
    return "\n".join(lines) + "\n"


def parse_good_digraph(text: str, source: str = "<string>") -> GoodDigraph:
    from .sphere_map import parse_map

    map_lines = []
    dir_lines = []
    circle = False
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "circle":
            circle = True
        elif line.startswith("dir "):
            dir_lines.append((i, line))
        else:
            map_lines.append(raw)
    m = parse_map("\n".join(map_lines), source)
    if circle:
        if not m.is_degenerate or dir_lines:
            raise ParseError(source, 1, "circle admits no darts or directions")
        return GoodDigraph(m, (), circle=True)
    bits = [None] * m.dart_count
    for lineno, line in dir_lines:
        parts = line.split()
        if len(parts) != 3 or parts[2] not in ("out", "in"):
            raise ParseError(source, lineno, "expected 'dir <dart> out|in'")
        try:
            x = int(parts[1])
        except ValueError:
            raise ParseError(source, lineno, "dart id is not an integer") from None
        if not 0 <= x < m.dart_count:
            raise ParseError(source, lineno, f"dart {x} out of range")
        if bits[x] is not None:
            raise ParseError(source, lineno, f"dart {x} directed twice")
        bits[x] = parts[2] == "out"
    missing = [x for x, b in enumerate(bits) if b is None]
    if missing:
        raise ParseError(source, len(text.splitlines()), f"dart {missing[0]} never directed")
    try:
        return GoodDigraph(m, tuple(bits))
    except NotGoodDigraph as exc:
        raise ParseError(source, 1, str(exc)) from None
