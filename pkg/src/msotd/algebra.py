"""Gluing algebra over terminal graphs and brute-force equivalence oracles.

A terminal graph is a graph with an ordered boundary list.  Three operations
are provided: full gluing along the boundary, boundary replacement, and
child absorption (union keeping the parent boundary).  Equivalence of two
terminal graphs under a property is probed exhaustively against all small
test graphs, which is a sound refinement of the true relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterable, Optional, Sequence

from .graphs import Edge, Graph, GraphError


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class TerminalGraph:
    graph: Graph
    terminals: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terminals", tuple(self.terminals))
        if len(set(self.terminals)) != len(self.terminals):
            raise AlgebraError("terminals must be distinct")
        for t in self.terminals:
            if t not in self.graph.index:
                raise AlgebraError(f"terminal {t!r} not a graph vertex")

    @property
    def arity(self) -> int:
        return len(self.terminals)

    def key(self) -> tuple:
        """Exact-identity key (label-level, order-sensitive)."""
        return (frozenset(self.graph.vertices), self.graph.edge_set, self.terminals)


def _fresh(label: str, used: set[str]) -> str:
    while label in used:
        label = label + "'"
    return label


def glue(g: TerminalGraph, h: TerminalGraph) -> Graph:
    """Disjoint union identifying the i-th terminals; parallel edges dropped.

    Labels from g survive; colliding non-terminal labels of h get a
    deterministic prime suffix.
    """
    if g.arity != h.arity:
        raise AlgebraError(f"terminal arity mismatch: {g.arity} vs {h.arity}")
    mapping = dict(zip(h.terminals, g.terminals))
    used = set(g.graph.vertices)
    verts = list(g.graph.vertices)
    for v in h.graph.vertices:
        if v in mapping:
            continue
        nv = _fresh(v, used)
        mapping[v] = nv
        used.add(nv)
        verts.append(nv)
    pairs = list(g.graph.edges)
    present = set(g.graph.edge_set)
    idx = {v: i for i, v in enumerate(verts)}
    for u, v in h.graph.edges:
        mu, mv = mapping[u], mapping[v]
        e = (mu, mv) if idx[mu] <= idx[mv] else (mv, mu)
        if e not in present:
            present.add(e)
            pairs.append(e)
    return Graph(tuple(verts), tuple(pairs))


def reterminalize(g: TerminalGraph, x: Sequence[str]) -> TerminalGraph:
    """Replace the boundary by x, adding any fresh vertices of x as isolated
    vertices.  Edges are untouched."""
    verts = list(g.graph.vertices)
    have = set(verts)
    for v in x:
        if v not in have:
            verts.append(v)
            have.add(v)
    return TerminalGraph(Graph(tuple(verts), g.graph.edges), tuple(x))


def glue_child(g: TerminalGraph, h: TerminalGraph) -> TerminalGraph:
    """Union of vertex and edge sets, keeping g's boundary.  Meaningful when
    the operands share vertices only through g's boundary (the shape produced
    by bags of a decomposition)."""
    verts = list(g.graph.vertices)
    have = set(verts)
    for v in h.graph.vertices:
        if v not in have:
            verts.append(v)
            have.add(v)
    idx = {v: i for i, v in enumerate(verts)}
    pairs = list(g.graph.edges)
    present = set(g.graph.edge_set)
    for u, v in h.graph.edges:
        e = (u, v) if idx[u] <= idx[v] else (v, u)
        if e not in present:
            present.add(e)
            pairs.append(e)
    return TerminalGraph(Graph(tuple(verts), tuple(pairs)), g.terminals)


def iso_respecting_terminals(a: TerminalGraph, b: TerminalGraph) -> bool:
    """Graph isomorphism with the i-th terminals forced onto each other."""
    if a.arity != b.arity:
        return False
    ga, gb = a.graph, b.graph
    if len(ga.vertices) != len(gb.vertices) or len(ga.edges) != len(gb.edges):
        return False
    mapping = dict(zip(a.terminals, b.terminals))
    if len(set(mapping.values())) != len(mapping):
        return False
    rest_a = [v for v in ga.vertices if v not in mapping]
    rest_b = [v for v in gb.vertices if v not in set(b.terminals)]
    dega = sorted(ga.degree(v) for v in rest_a)
    degb = sorted(gb.degree(v) for v in rest_b)
    if dega != degb:
        return False

    def consistent(m: dict[str, str]) -> bool:
        dom = set(m)
        for u, v in ga.edges:
            if u in dom and v in dom and not gb.has_edge(m[u], m[v]):
                return False
        cnt = 0
        img = set(m.values())
        for u, v in gb.edges:
            if u in img and v in img:
                cnt += 1
        mapped_edges = sum(1 for u, v in ga.edges if u in dom and v in dom)
        return cnt == mapped_edges

    def rec(i: int, m: dict[str, str], free: list[str]) -> bool:
        if not consistent(m):
            return False
        if i == len(rest_a):
            return True
        v = rest_a[i]
        for j, w in enumerate(free):
            if gb.degree(w) != ga.degree(v):
                continue
            m[v] = w
            if rec(i + 1, m, free[:j] + free[j + 1 :]):
                return True
            del m[v]
        return False

    return rec(0, dict(mapping), rest_b)


def canonical_form(tg: TerminalGraph) -> tuple:
    """Canonical key under isomorphisms fixing each terminal position."""
    g = tg.graph
    t = tg.arity
    base = {v: i for i, v in enumerate(tg.terminals)}
    rest = [v for v in g.vertices if v not in base]
    best = None
    for perm in permutations(range(t, t + len(rest))):
        m = dict(base)
        m.update(zip(rest, perm))
        edges = tuple(sorted(tuple(sorted((m[u], m[v]))) for u, v in g.edges))
        if best is None or edges < best:
            best = edges
    return (len(g.vertices), t, best)


@lru_cache(maxsize=None)
def test_graphs(arity: int, bound: int) -> tuple[TerminalGraph, ...]:
    """All test graphs with the given boundary arity and at most ``bound``
    vertices, one per isomorphism class (terminal positions fixed)."""
    out: list[TerminalGraph] = []
    seen: set[tuple] = set()
    lo = max(arity, 0)
    for n in range(lo, bound + 1):
        if n == 0:
            out.append(TerminalGraph(Graph((), ()), ()))
            continue
        verts = tuple(f"k{i}" for i in range(n))
        terms = verts[:arity]
        pair_pool = list(combinations(verts, 2))
        for r in range(len(pair_pool) + 1):
            for chosen in combinations(pair_pool, r):
                tg = TerminalGraph(Graph(verts, chosen), terms)
                key = canonical_form(tg)
                if key not in seen:
                    seen.add(key)
                    out.append(tg)
    return tuple(out)


def _as_pred(p) -> Callable[[Graph], bool]:
    return p.brute_eval if hasattr(p, "brute_eval") else p


def brute_equiv(g: TerminalGraph, h: TerminalGraph, p, bound: int = 4) -> bool:
    """True iff no test graph with at most ``bound`` vertices distinguishes
    g from h under the property.  A sound refinement probe, not full
    equivalence."""
    if g.arity != h.arity:
        raise AlgebraError("operands must have the same boundary arity")
    if g.arity > 3 or bound > 5:
        raise AlgebraError("oracle restricted to arity <= 3 and bound <= 5")
    pred = _as_pred(p)
    for k in test_graphs(g.arity, bound):
        if pred(glue(g, k)) != pred(glue(h, k)):
            return False
    return True


def fingerprint(g: TerminalGraph, p, bound: int = 4) -> tuple[bool, ...]:
    """Behaviour vector of g against the full test set; equality of
    fingerprints is exactly brute_equiv at the same bound."""
    pred = _as_pred(p)
    return tuple(pred(glue(g, k)) for k in test_graphs(g.arity, bound))


def _random_terminal_graph(
    rng: random.Random, terminals: tuple[str, ...], prefix: str, extra_max: int = 4
) -> TerminalGraph:
    n_extra = rng.randint(0, extra_max)
    verts = list(terminals) + [f"{prefix}{i}" for i in range(n_extra)]
    pairs = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if rng.random() < 0.45:
                pairs.append((verts[i], verts[j]))
    return TerminalGraph(Graph(tuple(verts), tuple(pairs)), terminals)


def congruence_check(p, trials: int, seed: int, bound: int = 4) -> dict:
    """Sampled verification that the bounded-equivalence classes behave like
    automaton states under the three operations.

    For quadruples with g ~ g' and h ~ h' (same terminal lists, sharing only
    boundary vertices) it asserts (g child-glued h) ~ (g' child-glued h'),
    the boundary-replacement congruence, and commutativity of child gluing
    over a common boundary.  Counterexamples are returned, not raised.
    """
    rng = random.Random(seed)
    x = ("t1", "t2")
    pool = [_random_terminal_graph(rng, x, f"p{i}_") for i in range(60)]
    fps = [fingerprint(tg, p, bound) for tg in pool]
    by_fp: dict[tuple, list[int]] = {}
    for i, fp in enumerate(fps):
        by_fp.setdefault(fp, []).append(i)
    classes = [idxs for idxs in by_fp.values() if len(idxs) >= 2]
    report = {"trials": 0, "counterexamples": [], "reterm_counterexamples": [],
              "commute_counterexamples": []}
    fp_cache: dict[tuple, tuple[bool, ...]] = {}

    def fp_of(tg: TerminalGraph) -> tuple[bool, ...]:
        key = canonical_form(tg)
        if key not in fp_cache:
            fp_cache[key] = fingerprint(tg, p, bound)
        return fp_cache[key]

    for _ in range(trials):
        report["trials"] += 1
        # join congruence
        if classes:
            cg = rng.choice(classes)
            ch = rng.choice(classes)
            g, gp = (pool[i] for i in rng.sample(cg, 2))
            h, hp = (pool[i] for i in rng.sample(ch, 2))
            if fp_of(glue_child(g, h)) != fp_of(glue_child(gp, hp)):
                report["counterexamples"].append(
                    (g.key(), gp.key(), h.key(), hp.key())
                )
        # boundary replacement congruence
        if classes:
            ch = rng.choice(classes)
            h, hp = (pool[i] for i in rng.sample(ch, 2))
            newx = (x[0], "t3") if rng.random() < 0.5 else (x[1], x[0])
            a = reterminalize(h, newx)
            b = reterminalize(hp, newx)
            if fingerprint(a, p, bound) != fingerprint(b, p, bound):
                report["reterm_counterexamples"].append((h.key(), hp.key(), newx))
        # commutativity over a common boundary
        h1 = rng.choice(pool)
        h2 = rng.choice(pool)
        if fp_of(glue_child(h1, h2)) != fp_of(glue_child(h2, h1)):
            report["commute_counterexamples"].append((h1.key(), h2.key()))
    report["ok"] = not (
        report["counterexamples"]
        or report["reterm_counterexamples"]
        or report["commute_counterexamples"]
    )
    return report


def rewrite_identity_holds(g: TerminalGraph, h: TerminalGraph) -> bool:
    """Child gluing equals: extend h to g's boundary, glue fully, restore
    g's boundary.  Exact equality of vertex/edge/terminal data whenever the
    operands share vertices only through g's boundary."""
    direct = glue_child(g, h)
    inner = reterminalize(h, g.terminals)
    rewritten = TerminalGraph(glue(g, inner), g.terminals)
    if direct.key() == rewritten.key():
        return True
    return iso_respecting_terminals(direct, rewritten)
