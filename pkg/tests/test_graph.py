"""Graphs, BFS geodesics, shapes, and induced subgraphs."""

from __future__ import annotations

import random

import pytest

from metricgraph import (
    Disconnected,
    EmptySubset,
    Graph,
    ParseError,
    UnknownLabel,
    between,
    classify_shape,
    cycle_graph,
    dump_graph,
    geodesic_distances,
    geodesic_metric,
    induced_subgraph,
    is_connected,
    parse_graph,
    path_graph,
    shortest_path,
)
from metricgraph.metric import find_metric_violation

import oracles
import randgen


def two_isolated() -> Graph:
    return Graph.from_edges(["a", "b"], [])


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------

def test_from_edges_validation():
    with pytest.raises(ParseError):
        Graph.from_edges(["a", "b"], [(0, 0)])
    with pytest.raises(ParseError):
        Graph.from_edges(["a", "b"], [(0, 1), (1, 0)])
    with pytest.raises(ParseError):
        Graph.from_edges(["a", "b"], [(0, 2)])
    with pytest.raises(ParseError):
        Graph.from_edges(["a", "a"], [(0, 1)])
    with pytest.raises(ParseError):
        Graph.from_edges([], [])


def test_direct_construction_checks_symmetry():
    with pytest.raises(ParseError):
        Graph(("a", "b"), ((1,), ()))
    with pytest.raises(ParseError):
        Graph(("a", "b"), ((1, 1), (0,)))


def test_edges_sorted():
    g = Graph.from_edges(["a", "b", "c"], [(2, 0), (1, 0)])
    assert g.edges() == [(0, 1), (0, 2)]
    assert g.edge_count() == 2
    assert g.has_edge(0, 2) and not g.has_edge(1, 2)


# ---------------------------------------------------------------------------
# Geodesic distances
# ---------------------------------------------------------------------------

def test_c12_distances_frozen():
    d = geodesic_distances(cycle_graph(12))
    assert d[0][5] == 5
    assert d[0][7] == 5  # min(7, 12-7)
    assert max(v for row in d for v in row) == 6


def test_c12_matches_path_enumeration_oracle():
    g = cycle_graph(12)
    assert [list(r) for r in geodesic_distances(g)] == oracles.brute_distance_matrix(g)


def test_single_edge_and_isolated():
    g = Graph.from_edges(["a", "b"], [(0, 1)])
    assert geodesic_distances(g) == ((0, 1), (1, 0))
    d = geodesic_distances(two_isolated())
    assert d[0][1] is None and d[1][0] is None and d[0][0] == 0


def test_distances_match_oracle_on_enumerated_graphs():
    from metricgraph import enumerate_connected_graphs

    for n in range(1, 6):
        for g in enumerate_connected_graphs(n):
            assert [list(r) for r in geodesic_distances(g)] == oracles.brute_distance_matrix(g)


def test_is_connected():
    assert is_connected(cycle_graph(12))
    assert not is_connected(two_isolated())
    assert is_connected(Graph.from_edges(["a"], []))


def test_geodesic_metric_is_a_metric():
    rng = random.Random(11)
    for _ in range(20):
        g = randgen.random_connected_graph(rng, rng.randint(2, 9))
        m = geodesic_metric(g)  # construction re-validates all axioms
        assert find_metric_violation(m.dist) is None
    with pytest.raises(Disconnected):
        geodesic_metric(two_isolated())


def test_shortest_path_deterministic_and_between():
    g = cycle_graph(6)
    p = shortest_path(g, "v0", "v3")
    assert p == ["v0", "v1", "v2", "v3"]  # lowest-index tie-break
    m = geodesic_metric(g)
    for y in p[1:-1]:
        assert between(m, "v0", y, "v3")
    with pytest.raises(Disconnected):
        shortest_path(two_isolated(), "a", "b")


# ---------------------------------------------------------------------------
# Induced subgraphs and shapes
# ---------------------------------------------------------------------------

def test_induced_subgraph_examples():
    evens = induced_subgraph(cycle_graph(8), ["v0", "v2", "v4", "v6"])
    assert evens.edge_count() == 0 and evens.n == 4

    c4 = cycle_graph(4)
    assert induced_subgraph(c4, list(c4.vertex_labels)) == c4

    p4 = Graph.from_edges(["a", "b", "c", "d"], [(0, 1), (1, 2), (2, 3)])
    ab = induced_subgraph(p4, ["a", "b"])
    assert ab.edges() == [(0, 1)]

    with pytest.raises(UnknownLabel):
        induced_subgraph(c4, ["v0", "zz"])
    with pytest.raises(EmptySubset):
        induced_subgraph(c4, [])


def test_classify_shape():
    s = classify_shape(path_graph(5))
    assert s.is_path and s.size == 4
    s = classify_shape(cycle_graph(4))
    assert s.is_cycle and s.size == 4
    star = Graph.from_edges(["c", "l1", "l2", "l3"], [(0, 1), (0, 2), (0, 3)])
    assert classify_shape(star).kind == "other"
    assert classify_shape(Graph.from_edges(["a"], [])).kind == "single_vertex"
    assert classify_shape(path_graph(2)).is_path
    # disconnected 2-regular graph is not a cycle
    two_triangles = Graph.from_edges(
        [f"t{i}" for i in range(6)],
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
    )
    assert classify_shape(two_triangles).kind == "other"


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def test_graph_json_round_trip():
    g = randgen.random_connected_graph(random.Random(3), 7)
    assert parse_graph(dump_graph(g)) == g
    assert parse_graph(dump_graph(g, "text"), "text").edges() == g.edges()


def test_parse_graph_errors():
    with pytest.raises(ParseError):
        parse_graph("{bad json")
    with pytest.raises(ParseError):
        parse_graph('{"vertices": ["a"]}')
    with pytest.raises(ParseError):
        parse_graph('{"vertices": ["a", "b"], "edges": [[0]]}')
    with pytest.raises(ParseError):
        parse_graph("2 1\n0 1\n0 1", "text")
    with pytest.raises(ParseError):
        parse_graph("nope", "text")
