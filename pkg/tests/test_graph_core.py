"""Graph container, .dss parsing, distances, and scatteredness checks."""

from __future__ import annotations

import pytest

from conftest import complete_graph, cycle_graph, path_graph, star_graph
from scatterset.graph_core import (
    INF,
    DssParseError,
    WeightedGraph,
    all_pairs_distances,
    connected_components,
    diameter,
    dijkstra_from,
    format_dss,
    induced_subgraph,
    is_scattered,
    max_finite_distance,
    parse_graph,
    scattered_violation,
    vertex_set,
)


def test_graph_requires_positive_n():
    with pytest.raises(ValueError):
        WeightedGraph(n=0, edges=())


@pytest.mark.parametrize(
    "edges",
    [
        ((0, 0, 1),),  # self loop
        ((0, 1, 0),),  # non-positive weight
        ((0, 3, 1),),  # endpoint out of range
        ((0, 1, 1), (1, 0, 2)),  # duplicate pair
    ],
)
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        WeightedGraph(n=3, edges=edges)


def test_adjacency_and_degree():
    g = star_graph(4)
    assert g.degree(0) == 4
    assert sorted(v for v, _ in g.adjacency[0]) == [1, 2, 3, 4]
    assert g.adjacency[2] == ((0, 1),)


def test_has_unit_weights():
    assert path_graph(3).has_unit_weights()
    assert not path_graph(3, weight=2).has_unit_weights()


def test_dijkstra_weighted_path():
    # Distances along a 3-edge path with weights 2, 5, 1: 0, 2, 7, 8.
    g = WeightedGraph(n=4, edges=((0, 1, 2), (1, 2, 5), (2, 3, 1)))
    assert dijkstra_from(g, 0) == [0, 2, 7, 8]
    assert dijkstra_from(g, 3) == [8, 6, 1, 0]


def test_dijkstra_radius_cutoff():
    g = path_graph(6)
    row = dijkstra_from(g, 0, radius=2)
    assert row[:3] == [0, 1, 2]
    assert all(x >= INF for x in row[3:])


def test_disconnected_distance_is_inf():
    g = WeightedGraph(n=3, edges=((0, 1, 1),))
    assert dijkstra_from(g, 0)[2] == INF
    assert diameter(g) == INF
    assert max_finite_distance(g) == 1


def test_all_pairs_matches_single_source():
    g = cycle_graph(7, weight=3)
    oracle = all_pairs_distances(g)
    for s in range(g.n):
        assert list(oracle.dist[s]) == dijkstra_from(g, s)
    assert oracle.between(0, 3) == 9


@pytest.mark.parametrize("n,expected", [(3, 1), (5, 2), (6, 3), (9, 4)])
def test_cycle_diameter(n, expected):
    assert diameter(cycle_graph(n)) == expected


def test_is_scattered_path_cases():
    g = path_graph(5)
    assert is_scattered(g, (0, 3), 3)
    assert is_scattered(g, (0, 4), 3)
    assert not is_scattered(g, (0, 2), 3)
    assert is_scattered(g, (), 9)
    assert is_scattered(g, (2,), 9)


def test_scattered_violation_reports_closest_offender():
    g = path_graph(5)
    assert scattered_violation(g, (0, 3), 3) is None
    bad = scattered_violation(g, (0, 2), 3)
    assert bad == (0, 2, 2)


def test_disconnected_members_always_scattered():
    g = WeightedGraph(n=4, edges=((0, 1, 1), (2, 3, 1)))
    assert is_scattered(g, (0, 2), 10**9)


def test_vertex_set_sorts_and_dedups():
    g = path_graph(4)
    assert vertex_set(g, [2, 0, 2]) == (0, 2)
    with pytest.raises(ValueError):
        vertex_set(g, [4])


def test_format_parse_round_trip():
    g = WeightedGraph(n=5, edges=((0, 4, 2), (1, 2, 1), (3, 4, 7)))
    assert parse_graph(format_dss(g)) == g


def test_parse_graph_accepts_comments_and_blank_lines():
    text = "c a comment\n\np dss 2 1\nc mid\ne 1 2 3\n"
    g = parse_graph(text)
    assert g.n == 2 and g.edges == ((0, 1, 3),)


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("", 1),
        ("e 1 2 1\n", 1),  # edge before header
        ("p dss 3 1\ne 1 1 1\n", 2),  # self loop
        ("p dss 3 1\ne 1 2 0\n", 2),  # zero weight
        ("p dss 3 1\ne 1 4 1\n", 2),  # vertex out of range
        ("p dss 3 2\ne 1 2 1\ne 2 1 5\n", 3),  # duplicate edge
        ("p dss 3 9\ne 1 2 1\n", 1),  # edge count mismatch
    ],
)
def test_parse_graph_rejects_malformed_input(text, line_no):
    with pytest.raises(DssParseError) as info:
        parse_graph(text)
    assert info.value.line_no == line_no


def test_connected_components_partition():
    g = WeightedGraph(n=6, edges=((0, 1, 1), (1, 2, 1), (4, 5, 1)))
    comps = connected_components(g)
    assert sorted(sorted(c) for c in comps) == [[0, 1, 2], [3], [4, 5]]


def test_induced_subgraph_remaps_ids_and_weights():
    g = WeightedGraph(n=5, edges=((1, 3, 4), (3, 4, 2), (0, 2, 1)))
    sub, old_ids = induced_subgraph(g, [1, 3, 4])
    assert list(old_ids) == [1, 3, 4]
    assert sub.n == 3
    assert sorted(sub.edges) == [(0, 1, 4), (1, 2, 2)]
