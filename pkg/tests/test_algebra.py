import random

import pytest

from msotd.algebra import (
    AlgebraError, TerminalGraph, brute_equiv, congruence_check, fingerprint,
    glue, glue_child, iso_respecting_terminals, reterminalize,
    rewrite_identity_holds,
)
from msotd.algebra import test_graphs as enumerate_test_graphs
from msotd.automata import ALL_PROPERTIES
from msotd.graphs import Graph


def tg(verts, edges, terms):
    return TerminalGraph(Graph(tuple(verts), tuple(edges)), tuple(terms))


def test_glue_identifies_terminals():
    a = tg(("s", "t", "x"), (("s", "x"), ("x", "t")), ("s", "t"))
    b = tg(("p", "q", "y"), (("p", "y"), ("y", "q")), ("p", "q"))
    g = glue(a, b)
    # two internal paths between the shared endpoints
    assert len(g.vertices) == 4
    assert len(g.edges) == 4
    assert g.has_edge("s", "x") and g.has_edge("x", "t")


def test_glue_arity_mismatch():
    with pytest.raises(AlgebraError):
        glue(tg(("a",), (), ("a",)), tg(("a", "b"), (), ("a", "b")))


def test_glue_label_collision_renamed():
    a = tg(("s", "x"), (("s", "x"),), ("s",))
    b = tg(("s", "x"), (("s", "x"),), ("s",))
    g = glue(a, b)
    assert len(g.vertices) == 3 and len(g.edges) == 2


def test_reterminalize_adds_isolated_vertices():
    a = tg(("s", "t"), (("s", "t"),), ("s", "t"))
    r = reterminalize(a, ("t", "u"))
    assert r.terminals == ("t", "u")
    assert set(r.graph.vertices) == {"s", "t", "u"}
    assert r.graph.edges == a.graph.edges


def test_iso_respecting_terminals():
    a = tg(("s", "t", "x"), (("s", "x"), ("x", "t")), ("s", "t"))
    b = tg(("s", "t", "y"), (("s", "y"), ("y", "t")), ("s", "t"))
    c = tg(("s", "t", "y"), (("s", "y"),), ("s", "t"))
    assert iso_respecting_terminals(a, b)
    assert not iso_respecting_terminals(a, c)


def test_test_graphs_enumeration():
    ts = enumerate_test_graphs(1, 3)
    assert all(k.arity == 1 for k in ts)
    assert all(len(k.graph.vertices) <= 3 for k in ts)
    # pairwise non-isomorphic by construction
    from msotd.algebra import canonical_form
    keys = [canonical_form(k) for k in ts]
    assert len(keys) == len(set(keys))


def test_brute_equiv_guards():
    a = tg(("a", "b", "c", "d"), (), ("a", "b", "c", "d"))
    with pytest.raises(AlgebraError):
        brute_equiv(a, a, lambda g: True)
    b = tg(("a",), (), ("a",))
    with pytest.raises(AlgebraError):
        brute_equiv(b, b, lambda g: True, bound=6)


def test_fingerprint_separates_parity():
    p = ALL_PROPERTIES["parity2"]()
    one = tg(("t",), (), ("t",))
    two = tg(("t", "u"), (), ("t",))
    three = tg(("t", "u", "w"), (), ("t",))
    assert fingerprint(one, p) != fingerprint(two, p)
    assert fingerprint(one, p) == fingerprint(three, p)
    assert brute_equiv(one, three, p)


def test_rewrite_identity_random(rng):
    for trial in range(100):
        terms = tuple(f"t{i}" for i in range(rng.randint(0, 2)))
        g = _rand_tg(rng, terms, "g")
        h = _rand_tg(rng, terms, "h")
        assert rewrite_identity_holds(g, h)


def _rand_tg(rng: random.Random, terms, prefix):
    verts = list(terms) + [f"{prefix}{i}" for i in range(rng.randint(0, 3))]
    pairs = [
        (verts[i], verts[j])
        for i in range(len(verts))
        for j in range(i + 1, len(verts))
        if rng.random() < 0.4
    ]
    return TerminalGraph(Graph(tuple(verts), tuple(pairs)), terms)


@pytest.mark.parametrize("name", ["bipartite", "connected"])
def test_congruence_smoke(name):
    p = ALL_PROPERTIES[name]()
    report = congruence_check(p, trials=40, seed=7)
    assert report["ok"], report
