import itertools
import random

import pytest

from conftest import small_halin
from msotd.automata import (
    ALL_PROPERTIES, TransitionTables, assign_edges, refinement_audit,
    run_automaton,
)
from msotd.decomposition import Bag, TreeDecomposition
from msotd.graphs import Graph, halin4, random_kcycle
from msotd.halin_td import build_halin_td
from msotd.kcycle_td import build_kcycle_td
from msotd.orientation import proper_coloring
from msotd.remember_td import build_remember_td, find_spanning_tree

PROPERTY_NAMES = sorted(ALL_PROPERTIES)


def test_assign_edges_exactly_once():
    h = halin4()
    td = build_halin_td(h)
    assigned = assign_edges(h.graph, td)
    flat = [e for es in assigned.values() for e in es]
    assert sorted(flat) == sorted(h.graph.edges)
    for b, es in assigned.items():
        bag = td.bags[b].vertices
        assert all(e[0] in bag and e[1] in bag for e in es)


@pytest.mark.parametrize("name", PROPERTY_NAMES)
def test_agreement_on_small_halin(name):
    p = ALL_PROPERTIES[name]()
    for seed in range(8):
        h = small_halin(seed)
        td = build_halin_td(h)
        assert run_automaton(h.graph, td, p) == p.brute_eval(h.graph)


@pytest.mark.parametrize("name", PROPERTY_NAMES)
def test_agreement_on_kcycle(name):
    p = ALL_PROPERTIES[name]()
    for k in (1, 2):
        kc = random_kcycle(k, 2, 5 + k)
        td = build_kcycle_td(kc)
        assert run_automaton(kc.graph, td, p) == p.brute_eval(kc.graph)


def test_decomposition_independence():
    for seed in range(4):
        h = small_halin(seed + 100)
        g = h.graph
        td_h = build_halin_td(h)
        tree = find_spanning_tree(g, len(g.vertices), len(g.edges))
        td_r = build_remember_td(g, tree, proper_coloring(g, g.max_degree()))
        for name in PROPERTY_NAMES:
            p = ALL_PROPERTIES[name]()
            assert run_automaton(g, td_h, p) == run_automaton(g, td_r, p)


def test_fold_order_independence():
    # a star-shaped decomposition whose root has several children; the
    # verdict must not depend on the sibling order
    g = Graph(("a", "b", "c", "d"), (("a", "b"), ("a", "c"), ("a", "d")))
    bags = {
        0: Bag(0, frozenset({"a"}), "Root", None),
        1: Bag(1, frozenset({"a", "b"}), "L", None),
        2: Bag(2, frozenset({"a", "c"}), "L", None),
        3: Bag(3, frozenset({"a", "d"}), "L", None),
    }
    for name in PROPERTY_NAMES:
        p = ALL_PROPERTIES[name]()
        verdicts = set()
        for perm in itertools.permutations((1, 2, 3)):
            td = TreeDecomposition(bags, 0, {1: 0, 2: 0, 3: 0}, {0: perm})
            verdicts.add(run_automaton(g, td, p))
        assert len(verdicts) == 1
        assert verdicts.pop() == p.brute_eval(g)


def test_transition_tables_replay_consistent():
    p = ALL_PROPERTIES["connected"]()
    h = small_halin(3)
    td = build_halin_td(h)
    tables = TransitionTables(p)
    # drive the tables through a real run
    states = {}
    assigned = assign_edges(h.graph, td)
    for b in td.postorder():
        bag = td.bags[b].vertices
        kids = td.children(b)
        if not kids:
            s = p.empty
            for v in h.graph.sort_vertices(bag):
                s = tables.introduce(s, v)
        else:
            s = states[kids[0]]
            src = td.bags[kids[0]].vertices
            for v in sorted(src - bag):
                s = tables.forget(s, v)
            for v in sorted(bag - src):
                s = tables.introduce(s, v)
            for c in kids[1:]:
                s2 = states[c]
                src2 = td.bags[c].vertices
                for v in sorted(src2 - bag):
                    s2 = tables.forget(s2, v)
                for v in sorted(bag - src2):
                    s2 = tables.introduce(s2, v)
                s = tables.join(s, s2)
        for e in assigned[b]:
            s = tables.edge(s, *e)
        states[b] = s
    assert tables.intro_memo and tables.join_memo
    assert tables.replay_consistent()


@pytest.mark.parametrize("name", PROPERTY_NAMES)
def test_refinement_audit_small(name):
    p = ALL_PROPERTIES[name]()
    report = refinement_audit(p, samples=30, seed=11)
    assert report["ok"], report["witnesses"]
