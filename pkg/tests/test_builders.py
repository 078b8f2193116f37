import pytest

from conftest import make_halin, random_connected_graph
from msotd.cycles import remember_numbers
from msotd.decomposition import validate, width
from msotd.feedback import augment_edges, augment_vertices, extend_graph
from msotd.graphs import Graph, GraphError, halin4, random_kcycle
from msotd.halin_td import build_halin_td
from msotd.kcycle_td import build_kcycle_td
from msotd.orientation import proper_coloring
from msotd.remember_td import build_remember_td, find_spanning_tree, random_layered


def test_halin_builder_valid_width_three():
    for seed in range(5):
        h = make_halin(3 + seed, seed)
        td = build_halin_td(h)
        assert validate(h.graph, td) == []
        assert width(td) <= 3
        assert td.max_child_count() <= 2
        for b in td.bags.values():
            if not td.children(b.id):
                assert len(b.vertices) == 1


def test_kcycle_builder_valid_width_bound():
    for k in (1, 2, 3):
        kc = random_kcycle(k, 2, 13 + k)
        td = build_kcycle_td(kc)
        assert validate(kc.graph, td) == []
        assert width(td) <= 4 * k


def test_remember_builder_width_bound(rng):
    for trial in range(10):
        g = random_connected_graph(rng, rng.randint(4, 9), rng.randint(0, 3))
        tree = find_spanning_tree(g, len(g.vertices), len(g.edges))
        assert tree is not None
        vr, er = remember_numbers(g, tree)
        col = proper_coloring(g, g.max_degree())
        td = build_remember_td(g, tree, col)
        assert validate(g, td) == []
        assert width(td) <= max(vr, er + 1)


def test_find_spanning_tree_respects_bounds():
    g = random_layered(2, 4, 14, 3)
    tree = find_spanning_tree(g, 2 * 4 - 1, 2 * 2)
    assert tree is not None
    vr, er = remember_numbers(g, tree)
    assert vr <= 7 and er <= 4


def test_augment_edges_width_growth():
    h = halin4()
    g, td = h.graph, build_halin_td(h)
    base = width(td)
    # K4 has no missing edge; use a larger instance with a genuine chord
    h = make_halin(4, 21)
    g, td = h.graph, build_halin_td(h)
    base = width(td)
    tree = h.tree_edges
    chord = next(
        (u, v)
        for i, u in enumerate(g.vertices)
        for v in g.vertices[i + 1 :]
        if not g.has_edge(u, v)
    )
    col = proper_coloring(g, g.max_degree())
    out = augment_edges(g, td, tree, frozenset({chord}), col, 1)
    # the decomposition now also covers the chord
    ext = extend_graph(g, frozenset(), frozenset({chord}))
    assert validate(ext, out) == []
    assert width(out) <= base + 1


def test_augment_edges_rejects_bound_violation():
    h = make_halin(4, 22)
    g, td, tree = h.graph, build_halin_td(h), h.tree_edges
    col = proper_coloring(g, g.max_degree())
    missing = [
        (u, v)
        for i, u in enumerate(g.vertices)
        for v in g.vertices[i + 1 :]
        if not g.has_edge(u, v)
    ]
    with pytest.raises(GraphError):
        augment_edges(g, td, tree, frozenset(missing[:3]), col, 0)


def test_augment_vertices_apex():
    h = make_halin(3, 8)
    g, td, tree = h.graph, build_halin_td(h), h.tree_edges
    base = width(td)
    u, v = next(iter(tree))
    out = augment_vertices(
        g, td, tree, frozenset({"apex"}), frozenset({("apex", u), ("apex", v)}), 1
    )
    ext = extend_graph(g, frozenset({"apex"}), frozenset({("apex", u), ("apex", v)}))
    assert validate(ext, out) == []
    assert width(out) <= base + 1


def test_augment_vertices_rejects_isolated_new_vertex():
    h = make_halin(3, 9)
    g, td, tree = h.graph, build_halin_td(h), h.tree_edges
    with pytest.raises(GraphError):
        augment_vertices(g, td, tree, frozenset({"apex"}), frozenset(), 1)
