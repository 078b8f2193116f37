import json

from conftest import make_halin
from msotd.decomposition import (
    Bag, TreeDecomposition, classify, contract_equal_bags, from_json_dict,
    pad_leaves, to_dot, to_json_dict, validate, width,
)
from msotd.graphs import Graph, halin4
from msotd.halin_td import build_halin_td
from msotd.orientation import proper_coloring


def _triangle_td():
    g = Graph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))
    bags = {
        0: Bag(0, frozenset({"a", "b", "c"}), "Root", None),
        1: Bag(1, frozenset({"a"}), "Leaf", None),
    }
    return g, TreeDecomposition(bags, 0, {1: 0}, {0: (1,)})


def test_validate_accepts_and_width():
    g, td = _triangle_td()
    assert validate(g, td) == []
    assert width(td) == 2
    assert classify(td, 0) == "Intermediate"
    assert classify(td, 1) == "Leaf"


def test_validate_detects_missing_vertex():
    g, td = _triangle_td()
    bags = dict(td.bags)
    bags[0] = Bag(0, frozenset({"a", "b"}), "Root", None)
    bad = TreeDecomposition(bags, 0, td.parent, td.order)
    axioms = {v["axiom"] for v in validate(g, bad)}
    assert "vertex-coverage" in axioms
    assert "edge-coverage" in axioms


def test_validate_detects_broken_connectivity():
    g = Graph(("a", "b", "c"), (("a", "b"), ("b", "c")))
    bags = {
        0: Bag(0, frozenset({"a", "b"}), "Root", None),
        1: Bag(1, frozenset({"b", "c"}), "Mid", None),
        2: Bag(2, frozenset({"a"}), "Leaf", None),
    }
    td = TreeDecomposition(bags, 0, {1: 0, 2: 1}, {0: (1,), 1: (2,)})
    axioms = {v["axiom"] for v in validate(g, td)}
    assert "bag-connectivity" in axioms


def test_contract_is_idempotent_and_valid():
    h = make_halin(3, 1)
    td = build_halin_td(h, contract=False)
    ctd = contract_equal_bags(td)
    assert validate(h.graph, ctd) == []
    assert width(ctd) == width(td)
    again = contract_equal_bags(ctd)
    assert again.bags.keys() == ctd.bags.keys()
    assert all(again.bags[b].vertices == ctd.bags[b].vertices for b in ctd.bags)


def test_pad_leaves_singleton_children():
    h = halin4()
    td = build_halin_td(h)
    col = proper_coloring(h.graph, 3)
    padded = pad_leaves(td, col)
    assert validate(h.graph, padded) == []
    assert width(padded) == width(td)
    for b in padded.bags.values():
        if not padded.children(b.id):
            assert len(b.vertices) == 1


def test_json_round_trip():
    h = make_halin(2, 4)
    td = build_halin_td(h)
    doc = json.loads(json.dumps(to_json_dict(h.graph, td)))
    back = from_json_dict(doc)
    assert back.root == td.root
    assert back.parent == td.parent
    assert {b: back.bags[b].vertices for b in back.bags} == {
        b: td.bags[b].vertices for b in td.bags
    }


def test_to_dot_mentions_every_bag():
    h = halin4()
    td = build_halin_td(h)
    dot = to_dot(h.graph, td)
    assert dot.startswith("digraph") or dot.startswith("graph")
    for b in td.bags:
        assert str(b) in dot
