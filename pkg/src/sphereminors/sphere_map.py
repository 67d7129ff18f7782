"""Connected multigraphs embedded in the sphere, encoded as rotation systems.

A map on ``2E`` darts (half-edges), numbered ``0 .. 2E-1``, is a pair of
permutations:

* ``alpha`` -- a fixed-point-free involution pairing the two darts of each
  edge;
* ``sigma`` -- the counterclockwise successor of a dart in the rotation
  around the vertex it is attached to.

Vertices are the orbits of ``sigma``, edges the orbits of ``alpha``, and
faces the orbits of ``phi`` with ``phi(d) = sigma(alpha(d))``.  With
``sigma`` counterclockwise, the orbit of ``phi`` through ``d`` walks the
boundary of the face lying to the left of ``d``.  A map is kept connected
and spherical: the orbit counts satisfy Euler's relation ``V - E + F = 2``.

The zero-dart map is admitted as the degenerate single-vertex map (one
vertex, no edges, one face); it is the terminal object of edge contraction.

Vertices, edges and faces are named by the smallest dart they contain, so
every handle in the public API is a plain dart id.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

ORIENTED = "oriented"
REFLECTIVE = "reflective"
MODES = (ORIENTED, REFLECTIVE)

#: Hard ceiling for exhaustive corpus enumeration (edges).
ENUMERATION_CAP = 8


class MapError(Exception):
    """Malformed or unusable sphere-map data."""


class ParseError(MapError):
    """Text input rejected; carries the source name and 1-based line."""

    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line
        self.message = message


class UnknownEdge(MapError):
    pass


class UnknownVertex(MapError):
    pass


class LoopContraction(MapError):
    pass


class WouldDisconnect(MapError):
    pass


class CapExceeded(MapError):
    pass


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Total invariant of a map up to the chosen equivalence mode.

    ``code`` is a tuple of integers; two maps are equivalent in ``mode``
    exactly when their codes for that mode are equal, and codes compare
    lexicographically, which fixes a total order on equivalence classes.
    """

    code: tuple
    mode: str


class SphereMap:
    """Immutable sphere-embedded multigraph.

    All operations return fresh maps; nothing mutates in place, so values
    are safe to share, hash and memoize on.
    """

    __slots__ = ("sigma", "alpha", "_derived")

    def __init__(self, sigma: Sequence[int], alpha: Sequence[int], check: bool = True):
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        self._derived: dict = {}
        if check:
            problems = validate(self)
            if problems:
                raise MapError("; ".join(problems))

    # -- basic counts -------------------------------------------------

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    @property
    def is_degenerate(self) -> bool:
        """True for the single-vertex, zero-dart map."""
        return not self.sigma

    @property
    def vertex_count(self) -> int:
        return 1 if self.is_degenerate else len(self.vertices())

    @property
    def face_count(self) -> int:
        return 1 if self.is_degenerate else len(self.faces())

    # -- derived structure, computed lazily ---------------------------

    def _orbits(self, perm: tuple) -> tuple:
        seen = [False] * len(perm)
        out = []
        for start in range(len(perm)):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            d = perm[start]
            while d != start:
                orbit.append(d)
                seen[d] = True
                d = perm[d]
            out.append(tuple(orbit))
        return tuple(out)

    def vertices(self) -> tuple:
        """Orbits of sigma, each starting at its smallest dart."""
        got = self._derived.get("vertices")
        if got is None:
            got = self._orbits(self.sigma)
            self._derived["vertices"] = got
        return got

    def faces(self) -> tuple:
        """Orbits of phi, each starting at its smallest dart."""
        got = self._derived.get("faces")
        if got is None:
            got = self._orbits(self.phi)
            self._derived["faces"] = got
        return got

    def edges(self) -> tuple:
        """Edge dart pairs ``(d, alpha(d))`` with ``d < alpha(d)``, sorted."""
        got = self._derived.get("edges")
        if got is None:
            got = tuple((d, self.alpha[d]) for d in range(self.dart_count) if d < self.alpha[d])
            self._derived["edges"] = got
        return got

    @property
    def phi(self) -> tuple:
        got = self._derived.get("phi")
        if got is None:
            got = tuple(self.sigma[self.alpha[d]] for d in range(self.dart_count))
            self._derived["phi"] = got
        return got

    @property
    def sigma_inv(self) -> tuple:
        got = self._derived.get("sigma_inv")
        if got is None:
            inv = [0] * self.dart_count
            for d, e in enumerate(self.sigma):
                inv[e] = d
            got = tuple(inv)
            self._derived["sigma_inv"] = got
        return got

    def _id_array(self, key: str, orbits: tuple) -> tuple:
        got = self._derived.get(key)
        if got is None:
            arr = [0] * self.dart_count
            for orbit in orbits:
                name = min(orbit)
                for d in orbit:
                    arr[d] = name
            got = tuple(arr)
            self._derived[key] = got
        return got

    def vertex_of(self, dart: int) -> int:
        """Name (smallest dart) of the vertex the dart is attached to."""
        return self._id_array("vertex_ids", self.vertices())[dart]

    def face_of(self, dart: int) -> int:
        """Name (smallest dart) of the face to the left of the dart."""
        return self._id_array("face_ids", self.faces())[dart]

    def edge_of(self, dart: int) -> int:
        return min(dart, self.alpha[dart])

    def vertex_ids(self) -> tuple:
        return tuple(min(orbit) for orbit in self.vertices())

    def edge_ids(self) -> tuple:
        return tuple(pair[0] for pair in self.edges())

    def face_ids(self) -> tuple:
        return tuple(min(orbit) for orbit in self.faces())

    def vertex_darts(self, vertex: int) -> tuple:
        """Rotation at a vertex, starting at the naming dart."""
        self._require_dart(vertex)
        if self.vertex_of(vertex) != vertex:
            raise UnknownVertex(f"dart {vertex} does not name a vertex")
        for orbit in self.vertices():
            if orbit[0] == vertex:
                return orbit
        raise UnknownVertex(f"no vertex named {vertex}")

    def degree(self, vertex: int) -> int:
        return len(self.vertex_darts(vertex))

    def is_loop(self, edge: int) -> bool:
        d = self._edge_dart(edge)
        return self.vertex_of(d) == self.vertex_of(self.alpha[d])

    def endpoints(self, edge: int) -> tuple:
        d = self._edge_dart(edge)
        return (self.vertex_of(d), self.vertex_of(self.alpha[d]))

    def _require_dart(self, dart: int) -> None:
        if not isinstance(dart, int) or not 0 <= dart < self.dart_count:
            raise UnknownEdge(f"dart {dart!r} out of range for {self.dart_count} darts")

    def _edge_dart(self, edge: int) -> int:
        """Normalize any dart of an edge to the edge's naming dart."""
        self._require_dart(edge)
        return min(edge, self.alpha[edge])

    # -- value semantics ----------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, SphereMap) and self.sigma == other.sigma and self.alpha == other.alpha

    def __hash__(self) -> int:
        return hash((self.sigma, self.alpha))

    def __repr__(self) -> str:
        if self.is_degenerate:
            return "SphereMap(degenerate)"
        return f"SphereMap(V={self.vertex_count}, E={self.edge_count}, F={self.face_count})"


def validate(m: SphereMap) -> list:
    """Diagnostics for the map invariants; empty list means valid.

    Checks that sigma and alpha are permutations of the dart range, that
    alpha is a fixed-point-free involution, that the pair acts transitively
    (the map is connected), and that the orbit counts satisfy Euler's
    relation for the sphere.
    """
    n = len(m.sigma)
    problems = []
    if len(m.alpha) != n:
        return [f"sigma has {n} darts but alpha has {len(m.alpha)}"]
    if n == 0:
        return []
    if n % 2:
        problems.append(f"odd dart count {n}")
    for name, perm in (("sigma", m.sigma), ("alpha", m.alpha)):
        if sorted(perm) != list(range(n)):
            problems.append(f"{name} is not a permutation of 0..{n - 1}")
    if problems:
        return problems
    for d in range(n):
        if m.alpha[d] == d:
            problems.append("alpha is not fixed-point-free")
            break
        if m.alpha[m.alpha[d]] != d:
            problems.append("alpha is not an involution")
            break
    if problems:
        return problems
    # connectivity: transitivity of the group generated by sigma and alpha
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        d = stack.pop()
        for e in (m.sigma[d], m.alpha[d]):
            if not seen[e]:
                seen[e] = True
                count += 1
                stack.append(e)
    if count != n:
        problems.append(f"map is disconnected ({count} of {n} darts reachable)")
        return problems
    euler = len(m.vertices()) - n // 2 + len(m.faces())
    if euler != 2:
        problems.append(f"not a sphere embedding (V-E+F = {euler}, expected 2)")
    return problems


def faces(m: SphereMap) -> tuple:
    """Face boundary orbits of the map (see :meth:`SphereMap.faces`)."""
    return m.faces()


# ---------------------------------------------------------------------------
# canonical forms


def _traversal(sigma: tuple, alpha: tuple, root: int, best, want_order: bool):
    """Breadth-first relabelling code from ``root``.

    Emits, for each new label ``i`` in order, the labels of the sigma and
    alpha images of the dart labelled ``i``; discovery order assigns fresh
    labels.  Comparison against ``best`` aborts early once the emitted
    prefix is strictly larger.  Returns ``(code, order)`` with ``order``
    listing old dart ids by new label (``order`` is None unless requested
    and the code ties or beats ``best``).
    """
    n = len(sigma)
    label = [-1] * n
    label[root] = 0
    order = [root]
    out = []
    undecided = best is not None
    i = 0
    while i < len(order):
        d = order[i]
        for img in (sigma[d], alpha[d]):
            lab = label[img]
            if lab < 0:
                lab = len(order)
                label[img] = lab
                order.append(img)
            if undecided:
                b = best[len(out)]
                if lab > b:
                    return None, None
                if lab < b:
                    undecided = False
            out.append(lab)
        i += 1
    return tuple(out), (order if want_order else None)


def _canonical(m: SphereMap, mode: str, want_order: bool):
    if mode not in MODES:
        raise ValueError(f"unknown equivalence mode {mode!r}")
    key = ("canon", mode)
    got = m._derived.get(key)
    if got is None:
        n = m.dart_count
        if n == 0:
            got = ((), ())
        else:
            sigmas = (m.sigma,) if mode == ORIENTED else (m.sigma, m.sigma_inv)
            best = None
            best_order = None
            for sig in sigmas:
                for root in range(n):
                    code, order = _traversal(sig, m.alpha, root, best, True)
                    if code is not None and (best is None or code < best):
                        best = code
                        best_order = order
            got = (best, tuple(best_order))
        m._derived[key] = got
    return got[0] if not want_order else got


def canonical_form(m: SphereMap, mode: str = REFLECTIVE) -> CanonicalCode:
    """Lexicographically smallest relabelling code of the map.

    ``reflective`` mode also minimizes over the mirror map (sigma replaced
    by its inverse), so it identifies maps related by an
    orientation-reversing homeomorphism of the sphere; ``oriented`` mode
    does not.
    """
    return CanonicalCode(_canonical(m, mode, False), mode)


def canonical_order(m: SphereMap, mode: str = REFLECTIVE) -> tuple:
    """Old dart ids listed by canonical label, for the winning traversal."""
    return _canonical(m, mode, True)[1]


def matches_code(m: SphereMap, code, mode: str = REFLECTIVE) -> bool:
    """True iff some traversal of ``m`` emits exactly ``code``.

    Equivalent to ``canonical_form(m, mode).code == code`` when ``code`` is
    itself a canonical code, but cheaper: each traversal aborts as soon as
    it exceeds the target, without minimizing over all roots.
    """
    if isinstance(code, CanonicalCode):
        code = code.code
    n = m.dart_count
    if n == 0:
        return code == ()
    if len(code) != 2 * n:
        return False
    sigmas = (m.sigma,) if mode == ORIENTED else (m.sigma, m.sigma_inv)
    for sig in sigmas:
        for root in range(n):
            got, _ = _traversal(sig, m.alpha, root, code, False)
            if got == code:
                return True
    return False


def equivalent(a: SphereMap, b: SphereMap, mode: str = REFLECTIVE) -> bool:
    """Combinatorial equivalence of two maps in the chosen mode."""
    if a.dart_count != b.dart_count:
        return False
    return matches_code(a, _canonical(b, mode, False), mode)


def relabel(m: SphereMap, perm: Sequence[int]) -> SphereMap:
    """Conjugate both permutations by a dart renumbering."""
    n = m.dart_count
    if sorted(perm) != list(range(n)):
        raise MapError("relabelling is not a permutation of the darts")
    sigma = [0] * n
    alpha = [0] * n
    for d in range(n):
        sigma[perm[d]] = perm[m.sigma[d]]
        alpha[perm[d]] = perm[m.alpha[d]]
    return SphereMap(sigma, alpha, check=False)


def mirror(m: SphereMap) -> SphereMap:
    """The map reflected: rotations reversed, edge pairing unchanged."""
    return SphereMap(m.sigma_inv, m.alpha, check=False)


# ---------------------------------------------------------------------------
# local surgery


def _splice_arrays(m: SphereMap):
    """Mutable sigma/alpha copies indexed by original dart ids."""
    return list(m.sigma), list(m.alpha)


def _ring(sigma: Sequence[int], start: int) -> list:
    """The sigma cycle through ``start`` in a working array."""
    out = [start]
    d = sigma[start]
    while d != start:
        out.append(d)
        d = sigma[d]
    return out


def _write_cycle(sigma: list, cycle: list) -> None:
    for i, d in enumerate(cycle):
        sigma[d] = cycle[(i + 1) % len(cycle)]


def _compact(sigma: list, alpha: list, keep: list) -> SphereMap:
    """Relabel surviving darts densely, preserving ascending id order."""
    new_id = {d: i for i, d in enumerate(keep)}
    return SphereMap(
        [new_id[sigma[d]] for d in keep],
        [new_id[alpha[d]] for d in keep],
    )


def _connected_after(sigma: list, alpha: list, keep: list) -> bool:
    if not keep:
        return True
    index = {d: i for i, d in enumerate(keep)}
    seen = [False] * len(keep)
    stack = [keep[0]]
    seen[0] = True
    count = 1
    while stack:
        d = stack.pop()
        for e in (sigma[d], alpha[d]):
            i = index[e]
            if not seen[i]:
                seen[i] = True
                count += 1
                stack.append(e)
    return count == len(keep)


def delete_edge(m: SphereMap, edge: int, remove_isolated: bool = False) -> SphereMap:
    """Delete one edge, splicing it out of both rotations.

    The result must stay connected.  A deletion that would leave an
    isolated vertex is refused unless ``remove_isolated`` is set, in which
    case the stranded vertex is dropped; deleting the only edge of a
    two-vertex map is refused either way, since nothing connected remains.
    """
    if m.is_degenerate:
        raise UnknownEdge("degenerate map has no edges")
    d = m._edge_dart(edge)
    d2 = m.alpha[d]
    sigma, alpha = _splice_arrays(m)
    emptied = 0
    ends = (d,) if m.vertex_of(d) == m.vertex_of(d2) else (d, d2)
    for x in ends:
        ring = [r for r in _ring(m.sigma, m.vertex_of(x)) if r not in (d, d2)]
        if not ring:
            emptied += 1
        else:
            _write_cycle(sigma, ring)
    keep = [x for x in range(m.dart_count) if x not in (d, d2)]
    if not keep:
        # the map was a single edge
        if m.vertex_count == 1:
            return SphereMap((), ())  # deleting the only loop leaves the bare vertex
        raise WouldDisconnect("deleting the only edge leaves two isolated vertices")
    if emptied and not remove_isolated:
        raise WouldDisconnect("deletion would isolate a vertex")
    if not _connected_after(sigma, alpha, keep):
        raise WouldDisconnect("deletion would disconnect the map")
    return _compact(sigma, alpha, keep)


def contract_edge(m: SphereMap, edge: int) -> SphereMap:
    """Contract a non-loop edge inside a disk around it.

    The endpoints merge; the merged rotation is the rotation at one end cut
    open at the edge, concatenated with the other end's rotation cut at its
    dart.  Faces are preserved.
    """
    if m.is_degenerate:
        raise UnknownEdge("degenerate map has no edges")
    d = m._edge_dart(edge)
    d2 = m.alpha[d]
    if m.vertex_of(d) == m.vertex_of(d2):
        raise LoopContraction(f"edge {d} is a loop")
    sigma, alpha = _splice_arrays(m)
    ring_u = _ring(m.sigma, d)[1:]   # rotation after d, excluding d
    ring_w = _ring(m.sigma, d2)[1:]
    merged = ring_u + ring_w
    if merged:
        _write_cycle(sigma, merged)
    keep = [x for x in range(m.dart_count) if x not in (d, d2)]
    if not keep:
        return SphereMap((), ())
    return _compact(sigma, alpha, keep)


def dual(m: SphereMap) -> SphereMap:
    """The dual map: faces become vertices, with rotation phi.

    Using phi itself as the dual rotation makes the construction exactly
    involutive on the dart encoding: ``dual(dual(m)) == m``.
    """
    if m.is_degenerate:
        return m
    return SphereMap(m.phi, m.alpha, check=False)


def smooth_vertex(m: SphereMap, vertex: int, pairing: dict):
    """Remove a vertex and rejoin its edge ends according to ``pairing``.

    ``pairing`` maps each dart at the vertex to the dart it is joined with
    (an involution on the vertex's rotation).  Strands are chased through
    the vertex, so edges whose both ends sit there are handled.  Returns
    ``(map_or_None, relabel, circles)``: the resulting map (None when no
    darts survive), a dict from surviving old dart ids to new ids, and the
    number of closed strands that detached from every surviving dart.
    """
    at_v = set(m.vertex_darts(vertex))
    if set(pairing) != at_v or any(pairing[pairing[x]] != x or pairing[x] == x for x in at_v):
        raise MapError("pairing must be a fixed-point-free involution on the vertex darts")
    alpha = list(m.alpha)
    sigma = list(m.sigma)
    consumed = set()

    def chase(y: int) -> int:
        # entering the vertex at dart y; leave via its pair, then follow that edge
        while True:
            consumed.add(y)
            out = pairing[y]
            consumed.add(out)
            nxt = alpha[out]
            if nxt not in at_v:
                return nxt
            y = nxt

    keep = [x for x in range(m.dart_count) if x not in at_v]
    new_alpha = dict()
    for x in keep:
        if m.alpha[x] in at_v:
            new_alpha[x] = chase(m.alpha[x])
    for x, y in new_alpha.items():
        alpha[x] = y
    # closed strands entirely through the removed vertex
    circles = 0
    leftover = at_v - consumed
    while leftover:
        y = leftover.pop()
        start = y
        while True:
            out = pairing[y]
            leftover.discard(out)
            y = alpha[out]
            if y == start:
                break
            leftover.discard(y)
        circles += 1
    if not keep:
        return None, {}, circles
    new_id = {d: i for i, d in enumerate(keep)}
    result = SphereMap(
        [new_id[sigma[d]] for d in keep],
        [new_id[alpha[d]] for d in keep],
        check=False,
    )
    return result, new_id, circles


# ---------------------------------------------------------------------------
# constructions


def cycle_map(n: int) -> SphereMap:
    """The n-cycle; ``n=1`` is the single loop, ``n=2`` the doubled edge."""
    if n < 1:
        raise MapError("cycle needs at least one edge")
    m = 2 * n
    sigma = [0] * m
    alpha = [0] * m
    for i in range(n):
        alpha[2 * i] = 2 * i + 1
        alpha[2 * i + 1] = 2 * i
        # vertex i carries dart 2i and the incoming dart of edge i-1
        prev_in = (2 * ((i - 1) % n)) + 1
        sigma[2 * i] = prev_in
        sigma[prev_in] = 2 * i
    return SphereMap(sigma, alpha)


def path_map(n: int) -> SphereMap:
    """The path with n edges and n+1 vertices."""
    if n < 1:
        raise MapError("path needs at least one edge")
    m = 2 * n
    sigma = list(range(m))
    alpha = [0] * m
    for i in range(n):
        alpha[2 * i] = 2 * i + 1
        alpha[2 * i + 1] = 2 * i
    for i in range(1, n):
        # internal vertex i carries darts 2i (out) and 2i-1 (in)
        sigma[2 * i] = 2 * i - 1
        sigma[2 * i - 1] = 2 * i
    return SphereMap(sigma, alpha)


def dipole_map(n: int) -> SphereMap:
    """Two vertices joined by n parallel edges; ``n=1`` is a single edge."""
    if n < 1:
        raise MapError("dipole needs at least one edge")
    m = 2 * n
    sigma = [0] * m
    alpha = [0] * m
    for i in range(n):
        alpha[2 * i] = 2 * i + 1
        alpha[2 * i + 1] = 2 * i
        sigma[2 * i] = (2 * i + 2) % m
        sigma[2 * i + 1] = (2 * i - 1) % m
    return SphereMap(sigma, alpha)


def make_grid(k: int) -> SphereMap:
    """The planar k-by-k grid; ``k=1`` is the degenerate single vertex."""
    if k < 1:
        raise MapError("grid needs k >= 1")
    if k == 1:
        return SphereMap((), ())
    edges = []
    for i in range(k):
        for j in range(k):
            if j + 1 < k:
                edges.append((("h", i, j), (i, j), (i, j + 1)))
            if i + 1 < k:
                edges.append((("v", i, j), (i, j), (i + 1, j)))
    edges.sort(key=lambda t: t[0])
    dart_at = {}
    for t, (key, a, b) in enumerate(edges):
        dart_at[(a, key)] = 2 * t
        dart_at[(b, key)] = 2 * t + 1
    n = 2 * len(edges)
    sigma = [0] * n
    alpha = [0] * n
    for t in range(len(edges)):
        alpha[2 * t] = 2 * t + 1
        alpha[2 * t + 1] = 2 * t
    for i in range(k):
        for j in range(k):
            # counterclockwise: east, north, west, south
            ring = []
            if j + 1 < k:
                ring.append(dart_at[((i, j), ("h", i, j))])
            if i + 1 < k:
                ring.append(dart_at[((i, j), ("v", i, j))])
            if j - 1 >= 0:
                ring.append(dart_at[((i, j), ("h", i, j - 1))])
            if i - 1 >= 0:
                ring.append(dart_at[((i, j), ("v", i - 1, j))])
            for p, d in enumerate(ring):
                sigma[d] = ring[(p + 1) % len(ring)]
    return SphereMap(sigma, alpha)


# ---------------------------------------------------------------------------
# exhaustive and random generation


def _base_maps() -> tuple:
    k2 = SphereMap((0, 1), (1, 0))
    loop = SphereMap((1, 0), (1, 0))
    return tuple(sorted((k2, loop), key=lambda m: canonical_form(m).code))


def one_edge_extensions(m: SphereMap) -> Iterator[SphereMap]:
    """All single-edge enlargements of a map, with duplicates.

    Either a new edge is drawn inside one face between two of its corners,
    or a new pendant vertex is hung off one corner.  A corner of the face
    is a vertex sector on its boundary; the corner entered by the boundary
    walk just before it leaves along dart ``z`` is the sector between
    ``sigma_inv(z)`` and ``z``, so the corners of a face correspond to the
    darts on its boundary.  Every connected map with at least two edges
    arises from a one-edge-smaller connected map this way: removing a
    non-bridge edge reverses an insertion into the merged face, and
    removing a pendant edge reverses hanging its leaf.
    """
    if m.is_degenerate:
        yield from _base_maps()
        return
    n = m.dart_count
    inv = m.sigma_inv
    for face in m.faces():
        for z, w in itertools.combinations_with_replacement(sorted(face), 2):
            sigma = list(m.sigma) + [0, 0]
            alpha = list(m.alpha) + [n + 1, n]
            if z == w:
                sigma[inv[z]] = n
                sigma[n] = n + 1
                sigma[n + 1] = z
            else:
                sigma[inv[z]] = n
                sigma[n] = z
                sigma[inv[w]] = n + 1
                sigma[n + 1] = w
            yield SphereMap(sigma, alpha)
    for z in range(n):
        sigma = list(m.sigma) + [0, 0]
        alpha = list(m.alpha) + [n + 1, n]
        sigma[inv[z]] = n
        sigma[n] = z
        sigma[n + 1] = n + 1
        yield SphereMap(sigma, alpha)


_corpus_levels: dict = {}


def _corpus_level(edges: int) -> tuple:
    """One representative per reflective class with exactly ``edges`` edges."""
    got = _corpus_levels.get(edges)
    if got is not None:
        return got
    if edges == 1:
        level = _base_maps()
    else:
        by_code = {}
        for m in _corpus_level(edges - 1):
            for candidate in one_edge_extensions(m):
                code = canonical_form(candidate).code
                if code not in by_code:
                    by_code[code] = candidate
        level = tuple(by_code[c] for c in sorted(by_code))
    _corpus_levels[edges] = level
    return level


def enumerate_connected_maps(max_edges: int, cap: int = ENUMERATION_CAP) -> Iterator[SphereMap]:
    """All connected sphere maps with 1..max_edges edges, one per class.

    Equivalence classes are reflective; within each edge count the output
    is sorted by canonical code, so the stream is deterministic.
    """
    if max_edges < 1:
        raise MapError("max_edges must be at least 1")
    if max_edges > cap:
        raise CapExceeded(f"enumeration of {max_edges} edges exceeds cap {cap}")
    for e in range(1, max_edges + 1):
        yield from _corpus_level(e)


def random_connected_map(edge_count: int, rng) -> SphereMap:
    """Random connected sphere map grown by uniform single-edge insertions."""
    if edge_count < 1:
        raise MapError("edge_count must be at least 1")
    m = rng.choice(_base_maps())
    while m.edge_count < edge_count:
        moves = list(one_edge_extensions(m))
        m = rng.choice(moves)
    return m


# ---------------------------------------------------------------------------
# text format


def format_map(m: SphereMap) -> str:
    """Canonical serialization: darts ascending, one line each."""
    lines = [f"spheremap v1 darts={m.dart_count}"]
    for d in range(m.dart_count):
        lines.append(f"d {d} sigma={m.sigma[d]} alpha={m.alpha[d]}")
    return "\n".join(lines) + "\n"


def _parse_header(line: str, source: str, lineno: int) -> int:
    parts = line.split()
    if len(parts) != 3 or parts[0] != "spheremap" or parts[1] != "v1":
        raise ParseError(source, lineno, "expected header 'spheremap v1 darts=<n>'")
    if not parts[2].startswith("darts="):
        raise ParseError(source, lineno, "missing darts= field in header")
    try:
        n = int(parts[2][6:])
    except ValueError:
        raise ParseError(source, lineno, "darts= is not an integer") from None
    if n < 0 or n % 2:
        raise ParseError(source, lineno, f"dart count {n} must be even and nonnegative")
    return n


def _parse_dart_line(line: str, n: int, source: str, lineno: int):
    parts = line.split()
    if len(parts) != 4 or parts[0] != "d":
        raise ParseError(source, lineno, "expected 'd <id> sigma=<id> alpha=<id>'")
    try:
        d = int(parts[1])
    except ValueError:
        raise ParseError(source, lineno, "dart id is not an integer") from None
    fields = {}
    for chunk in parts[2:]:
        key, eq, value = chunk.partition("=")
        if not eq or key not in ("sigma", "alpha"):
            raise ParseError(source, lineno, f"unexpected field {chunk!r}")
        try:
            fields[key] = int(value)
        except ValueError:
            raise ParseError(source, lineno, f"{key}= is not an integer") from None
    if sorted(fields) != ["alpha", "sigma"]:
        raise ParseError(source, lineno, "dart line needs sigma= and alpha= exactly once")
    for value in (d, fields["sigma"], fields["alpha"]):
        if not 0 <= value < n:
            raise ParseError(source, lineno, f"dart id {value} out of range 0..{n - 1}")
    return d, fields["sigma"], fields["alpha"]


def parse_map(text: str, source: str = "<string>") -> SphereMap:
    """Parse the map text format; rejects malformed input with line info."""
    lines = text.splitlines()
    body = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not body:
        raise ParseError(source, 1, "empty document")
    header_no, header = body[0]
    n = _parse_header(header, source, header_no)
    sigma = [-1] * n
    alpha = [-1] * n
    seen_line = [0] * n
    for lineno, line in body[1:]:
        d, s, a = _parse_dart_line(line, n, source, lineno)
        if seen_line[d]:
            raise ParseError(source, lineno, f"dart {d} defined twice (see line {seen_line[d]})")
        seen_line[d] = lineno
        sigma[d] = s
        alpha[d] = a
    for d in range(n):
        if sigma[d] < 0:
            raise ParseError(source, len(lines), f"dart {d} never defined")
    m = SphereMap(sigma, alpha, check=False)
    problems = validate(m)
    if problems:
        raise ParseError(source, header_no, "; ".join(problems))
    return m
