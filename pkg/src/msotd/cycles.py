"""Spanning-tree combinatorics: fundamental cycles, remember numbers,
sibling orderings derived from directed cycles, boundary vertices, and
biconnected components."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import networkx as nx

from .graphs import Edge, Graph, GraphError, HalinInput, KCycleInput
from .orientation import Orientation

Arc = tuple[str, str]  # (tail, head) of a tree arc


@dataclass(frozen=True)
class FundamentalCycle:
    non_tree_edge: Edge
    cycle_edges: tuple[Edge, ...]

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(v for e in self.cycle_edges for v in e)


@dataclass(frozen=True)
class ChildOrder:
    """Per-vertex left-to-right list of outgoing tree arcs."""

    arcs: Mapping[str, tuple[Arc, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", dict(self.arcs))

    def children(self, v: str) -> tuple[Arc, ...]:
        return self.arcs.get(v, ())

    def child_vertices(self, v: str) -> tuple[str, ...]:
        return tuple(head for _, head in self.children(v))


def _tree_adj(vertices: Iterable[str], tree: frozenset[Edge]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for u, v in tree:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def tree_path(g: Graph, tree: frozenset[Edge], a: str, b: str) -> Optional[list[str]]:
    """Vertex sequence of the unique tree path from a to b, or None if the
    endpoints sit in different tree components."""
    adj = _tree_adj(g.vertices, tree)
    parent: dict[str, Optional[str]] = {a: None}
    frontier = [a]
    while frontier and b not in parent:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    if b not in parent:
        return None
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def fundamental_cycle(g: Graph, tree: frozenset[Edge], e: Edge) -> FundamentalCycle:
    e = g.canon(*e)
    if e in tree:
        raise GraphError(f"edge {e!r} belongs to the spanning forest")
    if e not in g.edge_set:
        raise GraphError(f"edge {e!r} not in the graph")
    path = tree_path(g, tree, e[0], e[1])
    if path is None:
        raise GraphError(f"endpoints of {e!r} lie in different tree components")
    edges = tuple(g.canon(path[i], path[i + 1]) for i in range(len(path) - 1)) + (e,)
    return FundamentalCycle(e, edges)


def remember_numbers(g: Graph, tree: frozenset[Edge]) -> tuple[int, int]:
    """Maximum number of fundamental cycles through any vertex (vr) and
    through any tree edge (er)."""
    vcount = {v: 0 for v in g.vertices}
    ecount = {e: 0 for e in tree}
    for e in g.edges:
        if e in tree:
            continue
        fc = fundamental_cycle(g, tree, e)
        for v in fc.vertices:
            vcount[v] += 1
        for te in fc.cycle_edges:
            if te in tree:
                ecount[te] += 1
    vr = max(vcount.values(), default=0)
    er = max(ecount.values(), default=0) if ecount else 0
    return vr, er


def directed_cycle_positions(o: Orientation, cycle: frozenset[Edge], start: str) -> dict[str, int]:
    """Position of each cycle vertex along the directed cycle, start at 0."""
    succ = {o.tail(e): o.head(e) for e in cycle}
    pos = {start: 0}
    cur = succ[start]
    i = 1
    while cur != start:
        pos[cur] = i
        cur = succ[cur]
        i += 1
    return pos


def _rooted_children(g: Graph, tree: frozenset[Edge], root: str) -> dict[str, list[str]]:
    adj = _tree_adj(g.vertices, tree)
    children: dict[str, list[str]] = {v: [] for v in g.vertices}
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    children[u].append(w)
                    nxt.append(w)
        frontier = nxt
    return children


def child_order_halin(h: HalinInput, o: Orientation) -> ChildOrder:
    """Sibling order under a Halin orientation.

    The directed cycle leaves the root and sweeps the leaf arcs of the
    sibling subtrees from right to left, so the left-to-right order at a
    vertex sorts its children by decreasing first cycle position reached in
    their subtrees.
    """
    g = h.graph
    pos = directed_cycle_positions(o, h.cycle_edges, h.root)
    children = _rooted_children(g, h.tree_edges, h.root)

    min_pos: dict[str, int] = {}

    def fill(v: str) -> int:
        best = pos.get(v, len(pos) + 1)
        for c in children[v]:
            best = min(best, fill(c))
        min_pos[v] = best
        return best

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, len(g.vertices) * 2 + 50))
    try:
        fill(h.root)
    finally:
        sys.setrecursionlimit(old)

    order: dict[str, tuple[Arc, ...]] = {}
    for v in g.vertices:
        kids = sorted(children[v], key=lambda c: -min_pos[c])
        order[v] = tuple((v, c) for c in kids)
    return ChildOrder(order)


def boundary(h: HalinInput, order: ChildOrder, v: str, side: str) -> str:
    """Leaf reached from v by repeated leftmost (or rightmost) child descent.
    Cycle vertices are their own boundary."""
    if side not in ("left", "right"):
        raise GraphError(f"unknown side {side!r}")
    cur = v
    while order.children(cur):
        kids = order.children(cur)
        cur = kids[0][1] if side == "left" else kids[-1][1]
    return cur


def right_neighbor_closure(order: ChildOrder, e: Arc) -> frozenset[Arc]:
    """The arc e together with all its right siblings."""
    sibs = order.children(e[0])
    if e not in sibs:
        raise GraphError(f"{e!r} is not a child arc of {e[0]!r}")
    i = sibs.index(e)
    return frozenset(sibs[i:])


def ith_boundary(
    kc: KCycleInput,
    order: ChildOrder,
    v: str,
    i: int,
    side: str,
    restricted: Optional[frozenset[Edge]] = None,
) -> Optional[str]:
    """Extreme-side descendant of v lying on cycle C_i, reachable through
    the restricted tree edge set (all tree edges by default).  None when no
    such descendant exists."""
    if side not in ("left", "right"):
        raise GraphError(f"unknown side {side!r}")
    if not (1 <= i <= kc.k):
        raise GraphError(f"level {i} out of range")
    allowed = kc.tree_edges if restricted is None else restricted
    g = kc.graph
    lvl = kc.level
    # iterative left-to-right DFS from v along the child order
    found: Optional[str] = None
    stack = [v]
    while stack:
        u = stack.pop()
        if lvl[u] == i:
            if side == "left":
                return u
            found = u
        # boundary paths may pass through cycle vertices, keep descending
        kids = [c for (_, c) in order.children(u) if g.canon(u, c) in allowed]
        stack.extend(reversed(kids))
    return found


def biconnected_components(g: Graph) -> list[tuple[frozenset[str], frozenset[Edge]]]:
    """Biconnected components as (vertex set, edge set) pairs.  Isolated
    vertices form no component."""
    ng = nx.Graph()
    ng.add_nodes_from(g.vertices)
    ng.add_edges_from(g.edges)
    out = []
    for comp in nx.biconnected_component_edges(ng):
        edges = g.canon_edges(comp)
        verts = frozenset(v for e in edges for v in e)
        out.append((verts, edges))
    return out
