"""End-to-end acceptance suite.

One test per criterion; each prints a single pass/fail line and tolerates
zero violations.
"""

import itertools
import random

from conftest import make_halin, random_connected_graph, small_halin
from msotd.algebra import TerminalGraph, congruence_check, rewrite_identity_holds
from msotd.automata import ALL_PROPERTIES, refinement_audit, run_automaton
from msotd.cycles import remember_numbers
from msotd.decomposition import validate, width
from msotd.feedback import augment_edges, augment_vertices, extend_graph
from msotd.graphs import Graph, halin4, random_kcycle
from msotd.halin_td import build_halin_td
from msotd.kcycle_td import build_kcycle_td
from msotd.mso.crosscheck import (
    all_ok, run_halin_crosschecks, run_wheel_crosschecks,
)
from msotd.orientation import proper_coloring
from msotd.remember_td import build_remember_td, find_spanning_tree, random_layered

PROPERTY_NAMES = sorted(ALL_PROPERTIES)


def _report(criterion: int, label: str, failures: list) -> None:
    verdict = "PASS" if not failures else "FAIL"
    print(f"criterion {criterion} ({label}): {verdict}")
    assert not failures, failures[:5]


def test_criterion_1_halin_width():
    failures = []
    rng = random.Random(1)
    for trial in range(100):
        internal = rng.randint(1, 60)
        h = make_halin(internal, trial)
        n = len(h.graph.vertices)
        assert n <= 300
        td = build_halin_td(h)
        if validate(h.graph, td):
            failures.append((trial, "invalid"))
        if width(td) > 3:
            failures.append((trial, "width", width(td)))
        if td.max_child_count() > 2:
            failures.append((trial, "branching"))
        for b in td.bags.values():
            if not td.children(b.id) and len(b.vertices) != 1:
                failures.append((trial, "leaf-bag", b.id))
    _report(1, "halin width", failures)


def _brute_treewidth(g: Graph) -> int:
    """Exact treewidth via best elimination order; intended for tiny graphs."""
    best = len(g.vertices)
    adj0 = {v: set(g.neighbors(v)) for v in g.vertices}
    for order in itertools.permutations(g.vertices):
        adj = {v: set(ns) for v, ns in adj0.items()}
        worst = 0
        for v in order:
            ns = adj.pop(v)
            worst = max(worst, len(ns))
            for a in ns:
                adj[a].discard(v)
                adj[a] |= ns - {a}
            if worst >= best:
                break
        best = min(best, worst)
    return best


def test_criterion_2_treewidth_floor():
    failures = []
    tw = _brute_treewidth(halin4().graph)
    if tw != 3:
        failures.append(("K4 treewidth", tw))
    # sanity of the oracle itself on known graphs
    tree = Graph(("a", "b", "c", "d"), (("a", "b"), ("a", "c"), ("a", "d")))
    cycle = Graph(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")))
    if _brute_treewidth(tree) != 1:
        failures.append(("tree treewidth", _brute_treewidth(tree)))
    if _brute_treewidth(cycle) != 2:
        failures.append(("cycle treewidth", _brute_treewidth(cycle)))
    _report(2, "treewidth floor", failures)


def test_criterion_3_kcycle_width():
    failures = []
    rng = random.Random(3)
    for k in (1, 2, 3, 4):
        for trial in range(25):
            kc = random_kcycle(k, rng.randint(1, 3), 100 * k + trial)
            td = build_kcycle_td(kc)
            if validate(kc.graph, td):
                failures.append((k, trial, "invalid"))
            if width(td) > 4 * k:
                failures.append((k, trial, "width", width(td)))
    _report(3, "k-cycle width", failures)


def test_criterion_4_remember_bound():
    failures = []
    rng = random.Random(4)
    for trial in range(50):
        g = random_connected_graph(rng, rng.randint(4, 10), rng.randint(0, 4))
        tree = find_spanning_tree(g, len(g.vertices), len(g.edges))
        if tree is None:
            failures.append((trial, "no tree"))
            continue
        vr, er = remember_numbers(g, tree)
        td = build_remember_td(g, tree, proper_coloring(g, g.max_degree()))
        if validate(g, td):
            failures.append((trial, "invalid"))
        if width(td) > max(vr, er + 1):
            failures.append((trial, "width", width(td), vr, er))
    for trial in range(20):
        k = 1 + trial % 2
        delta = 4
        g = random_layered(k, delta, min(36, 10 + 2 * trial), trial)
        assert len(g.vertices) <= 40 and g.max_degree() <= delta
        tree = find_spanning_tree(g, delta * k - 1, 2 * k, seed=trial)
        if tree is None:
            failures.append(("outerplanar", trial, "no tree"))
            continue
        vr, er = remember_numbers(g, tree)
        if vr > delta * k - 1 or er > 2 * k:
            failures.append(("outerplanar", trial, vr, er))
    _report(4, "remember bound", failures)


def test_criterion_5_feedback_augmentation():
    failures = []
    rng = random.Random(5)
    # extra chords
    for trial in range(30):
        h = make_halin(rng.randint(3, 8), trial)
        g, tree = h.graph, h.tree_edges
        td = build_halin_td(h)
        base = width(td)
        missing = [
            (u, v)
            for i, u in enumerate(g.vertices)
            for v in g.vertices[i + 1 :]
            if not g.has_edge(u, v)
        ]
        chords = frozenset(rng.sample(missing, rng.randint(1, min(2, len(missing)))))
        l = len(chords)
        ext = extend_graph(g, frozenset(), chords)
        col = proper_coloring(ext, ext.max_degree())
        out = augment_edges(ext, td, tree, frozenset(ext.canon(*e) for e in chords), col, l)
        if validate(ext, out):
            failures.append(("edges", trial, "invalid"))
        if width(out) > base + l:
            failures.append(("edges", trial, "width", width(out), base, l))
    # apex vertices
    for trial in range(30):
        h = make_halin(rng.randint(3, 8), 1000 + trial)
        g, tree = h.graph, h.tree_edges
        td = build_halin_td(h)
        base = width(td)
        u, v = rng.choice(sorted(tree))
        new_es = frozenset({("apex", u), ("apex", v)})
        out = augment_vertices(g, td, tree, frozenset({"apex"}), new_es, 1)
        ext = extend_graph(g, frozenset({"apex"}), new_es)
        if validate(ext, out):
            failures.append(("vertices", trial, "invalid"))
        if width(out) > base + 1:
            failures.append(("vertices", trial, "width", width(out), base))
    _report(5, "feedback augmentation", failures)


def _random_terminal_pair(rng: random.Random):
    terms = tuple(f"t{i}" for i in range(rng.randint(0, 3)))
    def build(prefix):
        verts = list(terms) + [f"{prefix}{i}" for i in range(rng.randint(0, 3))]
        pairs = [
            (verts[i], verts[j])
            for i in range(len(verts))
            for j in range(i + 1, len(verts))
            if rng.random() < 0.4
        ]
        return TerminalGraph(Graph(tuple(verts), tuple(pairs)), terms)
    return build("g"), build("h")


def test_criterion_6_algebra():
    failures = []
    rng = random.Random(6)
    for trial in range(1000):
        g, h = _random_terminal_pair(rng)
        if not rewrite_identity_holds(g, h):
            failures.append(("rewrite", trial))
    for name in ("bipartite", "connected"):
        report = congruence_check(ALL_PROPERTIES[name](), trials=500, seed=6)
        if not report["ok"]:
            failures.append((name, report))
    _report(6, "algebra", failures)


def test_criterion_7_automaton_correctness():
    failures = []
    props = {name: ALL_PROPERTIES[name]() for name in PROPERTY_NAMES}
    for trial in range(200):
        h = small_halin(trial)
        g = h.graph
        td = build_halin_td(h)
        tree = find_spanning_tree(g, len(g.vertices), len(g.edges))
        td_r = build_remember_td(g, tree, proper_coloring(g, g.max_degree()))
        for name, p in props.items():
            want = p.brute_eval(g)
            if run_automaton(g, td, p) != want:
                failures.append(("halin", trial, name))
            if run_automaton(g, td_r, p) != want:
                failures.append(("remember", trial, name))
    rng = random.Random(7)
    for trial in range(50):
        k = 1 + trial % 2
        kc = random_kcycle(k, rng.randint(1, 2), trial)
        td = build_kcycle_td(kc)
        for name, p in props.items():
            if run_automaton(kc.graph, td, p) != p.brute_eval(kc.graph):
                failures.append(("kcycle", trial, name))
    _report(7, "automaton correctness", failures)


def test_criterion_8_mso_crosschecks():
    failures = []
    halin_report = run_halin_crosschecks()
    if not all_ok(halin_report):
        failures.append(("halin", halin_report))
    wheel_report = run_wheel_crosschecks()
    if not all_ok(wheel_report):
        failures.append(("wheel", wheel_report))
    _report(8, "mso cross-checks", failures)


def test_criterion_9_refinement_audit():
    failures = []
    for name in PROPERTY_NAMES:
        report = refinement_audit(ALL_PROPERTIES[name](), samples=300, seed=9)
        if not report["ok"]:
            failures.append((name, {
                "equal_sig_but_inequivalent": report["equal_sig_but_inequivalent"],
                "distinguished_but_equal_sig": report["distinguished_but_equal_sig"],
            }))
    _report(9, "refinement audit", failures)
