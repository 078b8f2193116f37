"""Decompositions driven by spanning-tree remember numbers.

The decomposition tree subdivides the spanning tree (one node per vertex,
one per tree edge).  Every non-tree edge deposits its lower-colored endpoint
into all bags along its fundamental cycle, so bag sizes are controlled by
the vertex and edge remember numbers.  Also: exhaustive / local search for
spanning trees within remember bounds and a generator of bounded-degree
layered (k-outerplanar) instances.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Optional

from .cycles import fundamental_cycle, remember_numbers
from .decomposition import Anchor, Bag, TreeDecomposition
from .graphs import Edge, Graph, GraphError
from .orientation import Coloring


def build_remember_td(
    g: Graph, tree: frozenset[Edge], col: Coloring
) -> TreeDecomposition:
    if len(tree) != len(g.vertices) - 1:
        raise GraphError("tree must span the graph")
    col.check_proper(g)
    # chosen endpoint of each non-tree edge: the lower colored one
    vert_bag: dict[str, set[str]] = {v: {v} for v in g.vertices}
    edge_bag: dict[Edge, set[str]] = {e: {e[0], e[1]} for e in tree}
    for e in g.edges:
        if e in tree:
            continue
        u, v = e
        chosen = u if col[u] < col[v] else v
        fc = fundamental_cycle(g, tree, e)
        for w in fc.vertices:
            vert_bag[w].add(chosen)
        for te in fc.cycle_edges:
            if te in tree:
                edge_bag[te].add(chosen)

    bags: dict[int, Bag] = {}
    node_id: dict[object, int] = {}
    nid = 0
    for v in g.vertices:
        node_id[v] = nid
        bags[nid] = Bag(nid, frozenset(vert_bag[v]), "V", Anchor.at_vertex(v))
        nid += 1
    for e in sorted(tree, key=lambda e: (g.index[e[0]], g.index[e[1]])):
        node_id[e] = nid
        bags[nid] = Bag(nid, frozenset(edge_bag[e]), "E", Anchor.at_edge(e))
        nid += 1

    # subdivision tree rooted at the first declared vertex
    adj: dict[str, list[Edge]] = {v: [] for v in g.vertices}
    for e in sorted(tree, key=lambda e: (g.index[e[0]], g.index[e[1]])):
        adj[e[0]].append(e)
        adj[e[1]].append(e)
    root_v = g.vertices[0]
    parent: dict[int, int] = {}
    order: dict[int, list[int]] = {}
    seen = {root_v}
    stack = [root_v]
    while stack:
        v = stack.pop(0)
        for e in adj[v]:
            w = e[1] if e[0] == v else e[0]
            if w in seen:
                continue
            seen.add(w)
            parent[node_id[e]] = node_id[v]
            order.setdefault(node_id[v], []).append(node_id[e])
            parent[node_id[w]] = node_id[e]
            order[node_id[e]] = [node_id[w]]
            stack.append(w)
    return TreeDecomposition(
        bags, node_id[root_v], parent, {p: tuple(cs) for p, cs in order.items()}
    )


def _is_spanning_tree(g: Graph, edges: frozenset[Edge]) -> bool:
    if len(edges) != len(g.vertices) - 1:
        return False
    seen = {g.vertices[0]} if g.vertices else set()
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    stack = list(seen)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


def _random_spanning_tree(g: Graph, rng: random.Random) -> frozenset[Edge]:
    edges = list(g.edges)
    rng.shuffle(edges)
    comp = {v: v for v in g.vertices}

    def find(v: str) -> str:
        while comp[v] != v:
            comp[v] = comp[comp[v]]
            v = comp[v]
        return v

    chosen = set()
    for e in edges:
        a, b = find(e[0]), find(e[1])
        if a != b:
            comp[a] = b
            chosen.add(e)
    return frozenset(chosen)


def spanning_tree_search(
    g: Graph, kappa: int, lam: int, seed: int = 0
) -> tuple[Optional[frozenset[Edge]], bool]:
    """Spanning tree with vr <= kappa and er <= lam.

    Returns (tree or None, exhaustive).  When ``exhaustive`` is true a None
    result proves no such tree exists; otherwise it is inconclusive.
    """
    if not g.is_connected():
        raise GraphError("graph must be connected")
    n = len(g.vertices)

    def good(tree: frozenset[Edge]) -> bool:
        vr, er = remember_numbers(g, tree)
        return vr <= kappa and er <= lam

    if len(g.edges) <= 18:
        for cand in combinations(g.edges, n - 1):
            t = frozenset(cand)
            if _is_spanning_tree(g, t) and good(t):
                return t, True
        return None, True

    def objective(tree: frozenset[Edge]) -> int:
        vr, er = remember_numbers(g, tree)
        return max(vr - kappa, 0) + max(er - lam, 0)

    budget = 10 * len(g.edges)
    for restart in range(8):
        rng = random.Random(seed * 1_000_003 + restart)
        tree = _random_spanning_tree(g, rng)
        score = objective(tree)
        for _ in range(budget):
            if score == 0:
                return tree, False
            e = rng.choice([e for e in g.edges if e not in tree])
            fc = fundamental_cycle(g, tree, e)
            out = rng.choice([f for f in fc.cycle_edges if f in tree])
            cand = (tree - {out}) | {e}
            cscore = objective(cand)
            if cscore <= score:
                tree, score = cand, cscore
        if score == 0:
            return tree, False
    return None, False


def find_spanning_tree(
    g: Graph, kappa: int, lam: int, seed: int = 0
) -> Optional[frozenset[Edge]]:
    tree, _ = spanning_tree_search(g, kappa, lam, seed)
    return tree


def random_layered(k: int, delta: int, n: int, seed: int) -> Graph:
    """Bounded-degree k-outerplanar instance: k nested cycles joined by
    non-crossing radial chords, every degree capped at ``delta``."""
    k = max(1, min(k, 3))
    delta = max(3, delta)
    rng = random.Random(seed)
    per = max(3, n // k)
    layers: list[list[str]] = []
    verts: list[str] = []
    for l in range(k):
        size = max(3, per + rng.randint(-1, 1))
        layer = [f"l{l}_{i}" for i in range(size)]
        layers.append(layer)
        verts.extend(layer)
    pairs: list[tuple[str, str]] = []
    for layer in layers:
        for i in range(len(layer)):
            pairs.append((layer[i], layer[(i + 1) % len(layer)]))
    deg = {v: 2 for v in verts}
    for l in range(k - 1):
        outer, inner = layers[l], layers[l + 1]
        i = j = 0
        pairs.append((outer[0], inner[0]))
        deg[outer[0]] += 1
        deg[inner[0]] += 1
        # advance two pointers, occasionally dropping a non-crossing chord
        while i < len(outer) - 1 or j < len(inner) - 1:
            if j == len(inner) - 1 or (i < len(outer) - 1 and rng.random() < 0.5):
                i += 1
            else:
                j += 1
            if rng.random() < 0.6 and deg[outer[i]] < delta and deg[inner[j]] < delta:
                pairs.append((outer[i], inner[j]))
                deg[outer[i]] += 1
                deg[inner[j]] += 1
    return Graph(tuple(verts), tuple(pairs))
