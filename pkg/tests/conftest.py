"""Shared fixtures: small reference maps and the bounded corpus."""

import pytest

from sphereminors.sphere_map import (
    SphereMap,
    cycle_map,
    dipole_map,
    enumerate_connected_maps,
    path_map,
)


@pytest.fixture(scope="session")
def triangle():
    return cycle_map(3)


@pytest.fixture(scope="session")
def single_edge():
    return path_map(1)


@pytest.fixture(scope="session")
def single_loop():
    return cycle_map(1)


@pytest.fixture(scope="session")
def triple_edge():
    return dipole_map(3)


@pytest.fixture(scope="session")
def tetrahedron():
    # complete graph on 4 vertices with its 4-triangle sphere embedding
    return SphereMap(
        [2, 8, 4, 7, 0, 11, 1, 10, 6, 5, 3, 9],
        [1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10],
    )


@pytest.fixture(scope="session")
def side_by_side_loops():
    # three loops at one vertex, drawn next to each other
    return SphereMap([1, 2, 3, 4, 5, 0], [1, 0, 3, 2, 5, 4])


@pytest.fixture(scope="session")
def nested_loops():
    # three loops at one vertex, one nested inside another
    return SphereMap([2, 4, 3, 1, 5, 0], [1, 0, 3, 2, 5, 4])


@pytest.fixture(scope="session")
def corpus_by_edges():
    levels = {}
    for m in enumerate_connected_maps(4):
        levels.setdefault(m.edge_count, []).append(m)
    return levels


@pytest.fixture(scope="session")
def small_corpus(corpus_by_edges):
    return [m for level in corpus_by_edges.values() for m in level]
