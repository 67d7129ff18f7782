"""Sphere-embedded multigraphs and their minor and link-diagram orders."""

from .diagrams import (
    BLACK_DELETE,
    Crossing,
    EmptyWitnessSet,
    InvalidDiagram,
    LinkDiagram,
    ROUND_CODE,
    SMOOTHING_KINDS,
    TaitPair,
    UnknownCrossing,
    WHITE_DELETE,
    WitnessSet,
    alternating_diagram,
    diagram_code,
    diagram_leq,
    diagram_leq_bruteforce,
    enumerate_diagrams,
    enumerate_projections,
    equivalent_diagrams,
    exchange,
    format_diagram,
    leadsto,
    leadsto_target_search,
    mirror_diagram,
    one_crossing_unknot,
    parse_diagram,
    projection,
    smooth,
    tait_graphs,
    trefoil_diagram,
    validate_diagram,
    zero_crossing_diagram,
)
from .medial import (
    ADJACENT,
    SKEW,
    SPLIT_KINDS,
    Checkerboard,
    GoodDigraph,
    NotFaceBipartite,
    NotGoodDigraph,
    checkerboard,
    colour_restriction,
    digraph_code,
    directed_medial,
    equivalent_digraphs,
    format_good_digraph,
    medial,
    mirror_digraph,
    parse_good_digraph,
    reverse_digraph,
    split,
    split_children,
    split_closure,
    split_reachable,
    underlying_plane_graph,
    validate_digraph,
)
from .minors import (
    InvalidModel,
    Limits,
    MinorAnswer,
    SearchBudgetExceeded,
    SphereModel,
    branch_sets,
    brute_force_minor,
    contracted_model_map,
    format_model,
    is_sphere_minor,
    parse_model,
    verify_model,
)
from .sphere_map import (
    CanonicalCode,
    CapExceeded,
    LoopContraction,
    MapError,
    MODES,
    ORIENTED,
    ParseError,
    REFLECTIVE,
    SphereMap,
    UnknownEdge,
    UnknownVertex,
    WouldDisconnect,
    canonical_form,
    canonical_order,
    contract_edge,
    cycle_map,
    delete_edge,
    dipole_map,
    dual,
    enumerate_connected_maps,
    equivalent,
    faces,
    format_map,
    make_grid,
    matches_code,
    mirror,
    parse_map,
    path_map,
    random_connected_map,
    relabel,
    smooth_vertex,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
