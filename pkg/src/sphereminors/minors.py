"""Exact sphere-minor testing with explicit, checkable witnesses.

A pattern map is a sphere minor of a host map when the host can be carved
down to it inside the sphere: keep a connected set of edges, contract a
forest among the kept edges, and land on the pattern up to the chosen
equivalence.  A :class:`SphereModel` records such a carving -- the kept
edges and the contracted forest -- and :func:`verify_model` replays it
from scratch, so every positive answer ships with a certificate that can
be checked independently of the search that found it.

The search itself assigns each pattern vertex a branch set: a host
subtree (a set of vertices plus a spanning tree of contraction edges,
enumerated as edge sets, since two spanning trees of the same vertex set
can contract to differently embedded rotations).  Remaining pattern edges
are then matched injectively onto host edges between the right branch
sets, and each complete candidate is confirmed by replay.  Everything is
exact; budgets only bound how long the search may run before giving up
loudly with :class:`SearchBudgetExceeded`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .sphere_map import (
    REFLECTIVE,
    CanonicalCode,
    CapExceeded,
    MapError,
    SphereMap,
    canonical_form,
    matches_code,
)


class InvalidModel(MapError):
    pass


class SearchBudgetExceeded(MapError):
    pass


@dataclass(frozen=True)
class Limits:
    """Resource bounds for the exact algorithms.

    ``minor_node_budget`` caps backtracking nodes in the minor search;
    ``brute_force_edge_cap`` caps host size for exhaustive carving
    enumeration; ``diagram_bfs_cap`` caps diagram size for exhaustive
    reduction closures; ``enumeration_cap`` caps corpus generation.
    """

    minor_node_budget: int = 10_000_000
    brute_force_edge_cap: int = 8
    diagram_bfs_cap: int = 6
    enumeration_cap: int = 8


@dataclass(frozen=True)
class SphereModel:
    """A carving of a host map down to some pattern.

    ``sub_edges`` are the kept host edges (their induced submap must be
    connected); ``c_edges`` is the subset contracted, and must be a forest.
    Edges are named by their smaller dart.
    """

    host: SphereMap
    sub_edges: frozenset
    c_edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "sub_edges", frozenset(self.sub_edges))
        object.__setattr__(self, "c_edges", frozenset(self.c_edges))

    @property
    def minor_edges(self) -> frozenset:
        """Kept edges surviving contraction; they biject with pattern edges."""
        return self.sub_edges - self.c_edges


@dataclass(frozen=True)
class MinorAnswer:
    """Decision plus, on yes, a replayable certificate."""

    result: bool
    witness: SphereModel | None = None

    def __bool__(self) -> bool:
        return self.result


# ---------------------------------------------------------------------------
# model replay


def _check_edges(host: SphereMap, model: SphereModel) -> None:
    edge_ids = set(host.edge_ids())
    bad = model.sub_edges - edge_ids
    if bad:
        raise InvalidModel(f"sub_edges contains non-edges {sorted(bad)}")
    if not model.c_edges <= model.sub_edges:
        extra = model.c_edges - model.sub_edges
        raise InvalidModel(f"c_edges not kept by sub_edges: {sorted(extra)}")


def _forest_check(host: SphereMap, c_edges) -> None:
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for e in sorted(c_edges):
        u, v = host.endpoints(e)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise InvalidModel(f"c_edges closes a cycle at edge {e}")
        parent[ru] = rv


def _restriction_arrays(host: SphereMap, edges):
    """Sigma/alpha over original dart ids restricted to the given edges."""
    chosen = set()
    for e in edges:
        chosen.add(e)
        chosen.add(host.alpha[e])
    sigma = {}
    alpha = {d: host.alpha[d] for d in chosen}
    for orbit in host.vertices():
        ring = [d for d in orbit if d in chosen]
        for i, d in enumerate(ring):
            sigma[d] = ring[(i + 1) % len(ring)]
    return sigma, alpha


def _connected_dicts(sigma: dict, alpha: dict) -> bool:
    if not sigma:
        return True
    start = next(iter(sigma))
    seen = {start}
    stack = [start]
    while stack:
        d = stack.pop()
        for e in (sigma[d], alpha[d]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return len(seen) == len(sigma)


def _contract_in_arrays(sigma: dict, alpha: dict, edge: int) -> None:
    d = edge
    d2 = alpha[d]
    ring_u = [d]
    x = sigma[d]
    while x != d:
        ring_u.append(x)
        x = sigma[x]
    if d2 in ring_u:
        raise InvalidModel(f"edge {edge} became a loop before contraction")
    ring_w = [d2]
    x = sigma[d2]
    while x != d2:
        ring_w.append(x)
        x = sigma[x]
    merged = ring_u[1:] + ring_w[1:]
    for i, x in enumerate(merged):
        sigma[x] = merged[(i + 1) % len(merged)]
    del sigma[d], sigma[d2], alpha[d], alpha[d2]


def contracted_model_map(model: SphereModel) -> SphereMap:
    """Replay a carving: restrict to the kept edges, contract the forest.

    Raises :class:`InvalidModel` if the carving is malformed (unknown
    edges, contraction set not a kept forest, or a disconnected submap).
    """
    host = model.host
    _check_edges(host, model)
    _forest_check(host, model.c_edges)
    sigma, alpha = _restriction_arrays(host, model.sub_edges)
    if not _connected_dicts(sigma, alpha):
        raise InvalidModel("kept edges induce a disconnected submap")
    for e in sorted(model.c_edges):
        _contract_in_arrays(sigma, alpha, e)
    keep = sorted(sigma)
    new_id = {d: i for i, d in enumerate(keep)}
    return SphereMap(
        [new_id[sigma[d]] for d in keep], [new_id[alpha[d]] for d in keep]
    )


def verify_model(pattern: SphereMap, model: SphereModel, mode: str = REFLECTIVE) -> bool:
    """Replay the carving and compare against the pattern exactly."""
    return matches_code(
        contracted_model_map(model), canonical_form(pattern, mode), mode
    )


def branch_sets(model: SphereModel) -> tuple:
    """Host vertex sets merged by the contraction forest, smallest first.

    Only vertices touched by the kept edges appear; each returned set
    collapses to one vertex of the carved map.
    """
    host = model.host
    _check_edges(host, model)
    touched = set()
    for e in model.sub_edges:
        touched.update(host.endpoints(e))
    parent = {v: v for v in touched}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in model.c_edges:
        u, v = host.endpoints(e)
        parent[find(u)] = find(v)
    groups = {}
    for v in touched:
        groups.setdefault(find(v), set()).add(v)
    return tuple(
        frozenset(g) for g in sorted(groups.values(), key=lambda s: min(s))
    )


# ---------------------------------------------------------------------------
# exact search


class _Search:
    def __init__(self, pattern: SphereMap, host: SphereMap, mode: str, limits: Limits):
        self.pattern = pattern
        self.host = host
        self.mode = mode
        self.limits = limits
        self.nodes = 0
        self.pattern_code = canonical_form(pattern, mode)

        self.host_vertices = list(host.vertex_ids())
        self.host_edges = list(host.edge_ids())
        self.h_ends = {e: host.endpoints(e) for e in self.host_edges}
        self.h_deg = {v: host.degree(v) for v in self.host_vertices}
        self.incident = {v: [] for v in self.host_vertices}
        for e in self.host_edges:
            u, w = self.h_ends[e]
            self.incident[u].append(e)
            if w != u:
                self.incident[w].append(e)

        self.p_vertices = sorted(
            pattern.vertex_ids(), key=lambda v: (-pattern.degree(v), v)
        )
        self.p_deg = {v: pattern.degree(v) for v in self.p_vertices}
        self.p_edges = list(pattern.edge_ids())
        self.p_ends = {e: pattern.endpoints(e) for e in self.p_edges}
        # pattern edge multiset keyed by unordered endpoint pair
        self.p_demand = {}
        for e in self.p_edges:
            key = frozenset(self.p_ends[e]) if len(set(self.p_ends[e])) == 2 else frozenset(
                {self.p_ends[e][0]}
            )
            self.p_demand.setdefault(key, []).append(e)

        self.c_budget = host.edge_count - pattern.edge_count
        self.assigned = {}       # pattern vertex -> (vset frozenset, eset frozenset)
        self.used_vertices = set()
        self.used_c = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.limits.minor_node_budget:
            raise SearchBudgetExceeded(
                f"minor search exceeded {self.limits.minor_node_budget} nodes"
            )

    # -- branch-set enumeration ---------------------------------------

    def _trees_from(self, root: int, max_vertices: int, max_edges: int):
        """All subtrees rooted at their minimum vertex ``root``."""

        def grow(vset, eset, excluded):
            yield frozenset(vset), frozenset(eset)
            if len(eset) >= max_edges or len(vset) >= max_vertices:
                return
            extensions = []
            for v in vset:
                for e in self.incident[v]:
                    if e in eset or e in excluded:
                        continue
                    u, w = self.h_ends[e]
                    other = w if u in vset else u
                    if other in vset or other in self.used_vertices or other < root:
                        continue
                    extensions.append((e, other))
            extensions.sort()
            banned = set(excluded)
            for e, other in extensions:
                yield from grow(vset | {other}, eset | {e}, set(banned))
                banned.add(e)

        yield from grow({root}, set(), set())

    def _feasible(self, pv: int, vset, eset) -> bool:
        capacity = sum(self.h_deg[v] for v in vset) - 2 * len(eset)
        if capacity < self.p_deg[pv]:
            return False
        # every pattern edge towards an already placed vertex needs
        # enough distinct host edges between the two branch sets
        for key, demand in self.p_demand.items():
            if pv not in key:
                continue
            others = key - {pv}
            if others:
                pu = next(iter(others))
                if pu not in self.assigned:
                    continue
                uset = self.assigned[pu][0]
                count = sum(
                    1
                    for e in self.host_edges
                    if e not in eset
                    and (
                        (self.h_ends[e][0] in vset and self.h_ends[e][1] in uset)
                        or (self.h_ends[e][0] in uset and self.h_ends[e][1] in vset)
                    )
                )
            else:
                # pattern loops need surviving host edges inside the branch
                count = sum(
                    1
                    for e in self.host_edges
                    if e not in eset
                    and self.h_ends[e][0] in vset
                    and self.h_ends[e][1] in vset
                )
            if count < len(demand):
                return False
        return True

    # -- main backtracking --------------------------------------------

    def run(self):
        return self._place(0)

    def _place(self, idx: int):
        self._tick()
        if idx == len(self.p_vertices):
            return self._match_edges()
        pv = self.p_vertices[idx]
        remaining = len(self.p_vertices) - idx - 1
        max_vertices = len(self.host_vertices) - len(self.used_vertices) - remaining
        max_edges = self.c_budget - self.used_c
        if max_vertices < 1:
            return None
        for root in self.host_vertices:
            if root in self.used_vertices:
                continue
            for vset, eset in self._trees_from(root, max_vertices, max_edges):
                self._tick()
                if not self._feasible(pv, vset, eset):
                    continue
                self.assigned[pv] = (vset, eset)
                self.used_vertices |= vset
                self.used_c += len(eset)
                found = self._place(idx + 1)
                del self.assigned[pv]
                self.used_vertices -= vset
                self.used_c -= len(eset)
                if found is not None:
                    return found
        return None

    def _match_edges(self):
        tree_edges = set()
        for vset, eset in self.assigned.values():
            tree_edges |= eset
        vertex_home = {}
        for pv, (vset, _) in self.assigned.items():
            for v in vset:
                vertex_home[v] = pv
        candidates = {}
        for pe in self.p_edges:
            a, b = self.p_ends[pe]
            opts = []
            for e in self.host_edges:
                if e in tree_edges:
                    continue
                u, w = self.h_ends[e]
                if u not in vertex_home or w not in vertex_home:
                    continue
                if {vertex_home[u], vertex_home[w]} == {a, b}:
                    opts.append(e)
            if not opts:
                return None
            candidates[pe] = opts
        order = sorted(self.p_edges, key=lambda pe: len(candidates[pe]))
        used = set()
        chosen = {}

        def assign(i):
            self._tick()
            if i == len(order):
                model = SphereModel(
                    self.host,
                    frozenset(tree_edges) | frozenset(chosen.values()),
                    frozenset(tree_edges),
                )
                if verify_model(self.pattern, model, self.mode):
                    return model
                return None
            pe = order[i]
            for e in candidates[pe]:
                if e in used:
                    continue
                used.add(e)
                chosen[pe] = e
                found = assign(i + 1)
                used.discard(e)
                del chosen[pe]
                if found is not None:
                    return found
            return None

        return assign(0)


def is_sphere_minor(
    pattern: SphereMap,
    host: SphereMap,
    mode: str = REFLECTIVE,
    limits: Limits | None = None,
) -> MinorAnswer:
    """Decide whether ``pattern`` is a sphere minor of ``host``.

    Exact for the chosen equivalence mode; a positive answer carries a
    carving witness that :func:`verify_model` accepts.  Raises
    :class:`SearchBudgetExceeded` rather than guessing when the node
    budget runs out.
    """
    limits = limits or Limits()
    if pattern.is_degenerate:
        return MinorAnswer(True, SphereModel(host, frozenset(), frozenset()))
    if host.is_degenerate:
        return MinorAnswer(False, None)
    if (
        pattern.edge_count > host.edge_count
        or pattern.vertex_count > host.vertex_count
        or pattern.face_count > host.face_count
    ):
        return MinorAnswer(False, None)
    if matches_code(host, canonical_form(pattern, mode), mode):
        return MinorAnswer(
            True, SphereModel(host, frozenset(host.edge_ids()), frozenset())
        )
    if pattern.edge_count == host.edge_count:
        return MinorAnswer(False, None)
    witness = _Search(pattern, host, mode, limits).run()
    if witness is None:
        return MinorAnswer(False, None)
    return MinorAnswer(True, witness)


# ---------------------------------------------------------------------------
# exhaustive oracle


@lru_cache(maxsize=512)
def _host_minor_codes(sigma: tuple, alpha: tuple, mode: str) -> frozenset:
    host = SphereMap(sigma, alpha, check=False)
    codes = {canonical_form(SphereMap((), ()), mode).code}
    edge_ids = list(host.edge_ids())
    for r in range(1, len(edge_ids) + 1):
        for subset in combinations(edge_ids, r):
            s_sigma, s_alpha = _restriction_arrays(host, subset)
            if not _connected_dicts(s_sigma, s_alpha):
                continue
            for k in range(0, r + 1):
                for c_set in combinations(subset, k):
                    try:
                        _forest_check(host, c_set)
                    except InvalidModel:
                        continue
                    model = SphereModel(host, frozenset(subset), frozenset(c_set))
                    codes.add(canonical_form(contracted_model_map(model), mode).code)
    return frozenset(codes)


def brute_force_minor(
    pattern: SphereMap,
    host: SphereMap,
    mode: str = REFLECTIVE,
    limits: Limits | None = None,
) -> bool:
    """Independent oracle: enumerate every carving of a small host.

    Exhausts all connected kept-edge subsets and contraction forests,
    so it is exponential in the host size and refuses hosts above
    ``brute_force_edge_cap``.
    """
    limits = limits or Limits()
    if host.edge_count > limits.brute_force_edge_cap:
        raise CapExceeded(
            f"host has {host.edge_count} edges, brute force capped at "
            f"{limits.brute_force_edge_cap}"
        )
    return canonical_form(pattern, mode).code in _host_minor_codes(
        host.sigma, host.alpha, mode
    )


# ---------------------------------------------------------------------------
# witness text format


def format_model(model: SphereModel) -> str:
    """Serialize a carving witness; the host map travels separately."""
    lines = ["minormodel v1"]
    lines.append("sub " + " ".join(str(e) for e in sorted(model.sub_edges)))
    lines.append("contract " + " ".join(str(e) for e in sorted(model.c_edges)))
    return "\n".join(lines) + "\n"


def parse_model(text: str, host: SphereMap, source: str = "<string>") -> SphereModel:
    """Parse a carving witness against its host map; strict."""
    from .sphere_map import ParseError

    sub = None
    contract = None
    header_seen = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if not header_seen:
            if fields != ["minormodel", "v1"]:
                raise ParseError(source, number, "expected header 'minormodel v1'")
            header_seen = True
            continue
        if fields[0] == "sub" and sub is None:
            try:
                sub = frozenset(int(x) for x in fields[1:])
            except ValueError:
                raise ParseError(source, number, "sub line needs edge numbers")
        elif fields[0] == "contract" and contract is None:
            try:
                contract = frozenset(int(x) for x in fields[1:])
            except ValueError:
                raise ParseError(source, number, "contract line needs edge numbers")
        else:
            raise ParseError(source, number, f"unexpected line {fields[0]!r}")
    if not header_seen or sub is None or contract is None:
        raise ParseError(source, 1, "document needs header, sub line, contract line")
    model = SphereModel(host, sub, contract)
    contracted_model_map(model)  # validates the carving against the host
    return model
