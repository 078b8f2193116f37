import pytest

from conftest import make_halin
from msotd.cycles import (
    ChildOrder, biconnected_components, child_order_halin,
    directed_cycle_positions, fundamental_cycle, remember_numbers, tree_path,
)
from msotd.graphs import Graph, GraphError, halin4
from msotd.orientation import halin_orientation


def _path_graph_c4():
    g = Graph(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")))
    tree = g.canon_edges((("a", "b"), ("b", "c"), ("c", "d")))
    return g, tree


def test_fundamental_cycle_c4():
    g, tree = _path_graph_c4()
    fc = fundamental_cycle(g, tree, ("a", "d"))
    assert fc.non_tree_edge == ("a", "d")
    assert set(fc.cycle_edges) == set(g.edges)
    assert fc.vertices == frozenset(g.vertices)


def test_fundamental_cycle_rejects_tree_edge():
    g, tree = _path_graph_c4()
    with pytest.raises(GraphError):
        fundamental_cycle(g, tree, ("a", "b"))


def test_remember_numbers_c4_path_tree():
    # one chord, one fundamental cycle: each vertex and each tree edge
    # is remembered exactly once
    g, tree = _path_graph_c4()
    assert remember_numbers(g, tree) == (1, 1)


def test_remember_numbers_k4_star_tree():
    h = halin4()
    g = h.graph
    tree = g.canon_edges((("a", "v"), ("b", "v"), ("c", "v")))
    assert remember_numbers(g, tree) == (3, 2)


def test_tree_path_endpoints_and_disconnect():
    g, tree = _path_graph_c4()
    assert tree_path(g, tree, "a", "d") == ["a", "b", "c", "d"]
    assert tree_path(g, tree, "b", "b") == ["b"]
    forest = g.canon_edges((("a", "b"), ("c", "d")))
    assert tree_path(g, forest, "a", "c") is None


def test_directed_cycle_positions_cover_cycle():
    h = make_halin(3, 11)
    o = halin_orientation(h)
    on_cycle = {v for e in h.cycle_edges for v in e}
    start = next(iter(on_cycle))
    pos = directed_cycle_positions(o, h.cycle_edges, start)
    assert set(pos) == on_cycle
    assert sorted(pos.values()) == list(range(len(on_cycle)))


def test_child_order_matches_tree():
    h = make_halin(4, 3)
    o = halin_orientation(h)
    co = child_order_halin(h, o)
    assert isinstance(co, ChildOrder)
    seen = set()
    for v in h.graph.vertices:
        for tail, head in co.children(v):
            assert tail == v
            assert h.graph.canon(tail, head) in h.tree_edges
            seen.add(h.graph.canon(tail, head))
    assert seen == h.tree_edges


def test_biconnected_components_bridge_split():
    g = Graph(
        ("a", "b", "c", "d", "e"),
        (("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e")),
    )
    comps = biconnected_components(g)
    edge_parts = sorted(sorted(ec) for _, ec in comps)
    assert edge_parts == [
        [("a", "b"), ("a", "c"), ("b", "c")],
        [("c", "d")],
        [("d", "e")],
    ]
