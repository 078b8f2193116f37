import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_halin, random_connected_graph
from msotd.graphs import (
    Graph, GraphError, HalinInput, KCycleInput, halin4, parse_graph,
    random_kcycle,
)


def test_canonical_edges_and_lookup():
    g = Graph(("a", "b", "c"), (("b", "a"), ("b", "c")))
    assert g.edges == (("a", "b"), ("b", "c"))
    assert g.has_edge("a", "b") and g.has_edge("b", "a")
    assert not g.has_edge("a", "c")
    assert g.canon("c", "b") == ("b", "c")
    assert sorted(g.neighbors("b")) == ["a", "c"]


def test_parse_graph_rejects_malformed():
    with pytest.raises(GraphError):
        parse_graph("not json")
    with pytest.raises(GraphError):
        parse_graph(json.dumps({"vertices": ["a", "a"], "edges": []}))
    with pytest.raises(GraphError):
        parse_graph(json.dumps({"vertices": ["a"], "edges": [["a", "a"]]}))
    with pytest.raises(GraphError):
        parse_graph(json.dumps({"vertices": ["a", "b"], "edges": [["a", "x"]]}))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_graph_serialization_round_trip(seed):
    g = random_connected_graph(random.Random(seed), 6, 3)
    assert parse_graph(g.serialize()) == g


def test_halin4_shape():
    h = halin4()
    h.validate()
    assert len(h.graph.vertices) == 4
    assert len(h.graph.edges) == 6
    assert h.root == "a"


@given(st.integers(1, 12), st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_random_halin_instances_validate(internal, seed):
    h = make_halin(internal, seed)
    h.validate()
    # cycle passes through exactly the tree leaves
    tadj = {}
    for u, v in h.tree_edges:
        tadj.setdefault(u, []).append(v)
        tadj.setdefault(v, []).append(u)
    leaves = {v for v, ns in tadj.items() if len(ns) == 1}
    assert len(h.cycle_edges) == len(leaves)
    assert {v for e in h.cycle_edges for v in e} == leaves
    # no internal vertex of tree-degree two
    assert all(len(ns) != 2 for ns in tadj.values())


@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_random_kcycle_instances_validate(k, branching, seed):
    kc = random_kcycle(k, branching, seed)
    kc.validate()
    assert kc.k == k
    assert kc.level[kc.root] == k


def test_halin_json_round_trip():
    h = make_halin(3, 5)
    assert HalinInput.from_json_dict(json.loads(json.dumps(h.to_json_dict()))) == h


def test_kcycle_json_round_trip():
    kc = random_kcycle(2, 2, 7)
    doc = json.loads(json.dumps(kc.to_json_dict()))
    assert KCycleInput.from_json_dict(doc) == kc
