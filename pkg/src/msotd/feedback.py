"""Widening anchored decompositions to absorb bounded feedback sets.

An extra edge deposits its lower-colored endpoint into every bag anchored on
its fundamental cycle; an extra vertex lands in every bag anchored inside
its biconnected component of the extended spanning tree.  Both passes then
re-connect the touched bags along the decomposition tree, so the three
axioms survive builders whose anchor regions are not contiguous.  The
feedback-set preconditions are verified by exhaustive search on small
biconnected components and rejected as unverifiable on larger ones.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .cycles import biconnected_components, tree_path
from .decomposition import Bag, TreeDecomposition
from .graphs import Edge, Graph, GraphError
from .orientation import Coloring

EDGE_CHECK_CAP = 14  # max component edges for the feedback-edge search
VERTEX_CHECK_CAP = 12  # max component vertices for the feedback-vertex search


def extend_graph(
    g: Graph, new_vertices: Iterable[str] = (), new_edges: Iterable[Edge] = ()
) -> Graph:
    return Graph(tuple(g.vertices) + tuple(new_vertices), tuple(g.edges) + tuple(new_edges))


def _is_forest(vertices: Iterable[str], edges: Iterable[Edge]) -> bool:
    comp: dict[str, str] = {v: v for v in vertices}

    def find(v: str) -> str:
        while comp[v] != v:
            comp[v] = comp[comp[v]]
            v = comp[v]
        return v

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        comp[a] = b
    return True


def check_feedback_edge_bound(t_prime: Graph, l: int) -> None:
    """Every biconnected component must shed at most ``l`` edges to become
    acyclic; verified exhaustively, small components only."""
    for verts, edges in biconnected_components(t_prime):
        if len(edges) > EDGE_CHECK_CAP:
            raise GraphError(
                f"biconnected component with {len(edges)} edges exceeds the "
                f"{EDGE_CHECK_CAP}-edge verification cap"
            )
        es = sorted(edges)
        ok = any(
            _is_forest(verts, set(es) - set(drop))
            for m in range(l + 1)
            for drop in combinations(es, m)
        )
        if not ok:
            raise GraphError(
                f"biconnected component on {sorted(verts)} has no feedback "
                f"edge set of size <= {l}"
            )


def check_feedback_vertex_bound(t_prime: Graph, l: int) -> None:
    for verts, edges in biconnected_components(t_prime):
        if len(verts) > VERTEX_CHECK_CAP:
            raise GraphError(
                f"biconnected component with {len(verts)} vertices exceeds "
                f"the {VERTEX_CHECK_CAP}-vertex verification cap"
            )
        vs = sorted(verts)
        ok = False
        for m in range(l + 1):
            for drop in combinations(vs, m):
                kept = verts - set(drop)
                kept_edges = [e for e in edges if e[0] in kept and e[1] in kept]
                if _is_forest(kept, kept_edges):
                    ok = True
                    break
            if ok:
                break
        if not ok:
            raise GraphError(
                f"biconnected component on {vs} has no feedback vertex set "
                f"of size <= {l}"
            )


def _check_anchors(g: Graph, td: TreeDecomposition, tree: frozenset[Edge]) -> None:
    for b in td.bags.values():
        if b.anchor.kind == "vertex":
            if b.anchor.vertex not in g.index:
                raise GraphError(f"bag {b.id} anchored at unknown vertex")
        else:
            if g.canon(*b.anchor.edge) not in tree:
                raise GraphError(
                    f"bag {b.id} anchored at non-tree edge {b.anchor.edge!r}"
                )


def _neighbors(td: TreeDecomposition) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {b: [] for b in td.bags}
    for c, p in td.parent.items():
        adj[c].append(p)
        adj[p].append(c)
    return adj


def _steiner_closure(td: TreeDecomposition, marked: set[int]) -> set[int]:
    """Bags of the minimal decomposition subtree containing ``marked``:
    repeatedly prune unmarked leaves."""
    if not marked:
        return set()
    adj = _neighbors(td)
    alive = set(td.bags)
    deg = {b: len(adj[b]) for b in alive}
    queue = [b for b in alive if deg[b] <= 1 and b not in marked]
    while queue:
        b = queue.pop()
        if b not in alive:
            continue
        alive.discard(b)
        for n in adj[b]:
            if n in alive:
                deg[n] -= 1
                if deg[n] <= 1 and n not in marked:
                    queue.append(n)
    return alive


def _add_to_bags(td: TreeDecomposition, targets: set[int], v: str) -> TreeDecomposition:
    bags = dict(td.bags)
    for b in targets:
        old = bags[b]
        bags[b] = Bag(old.id, old.vertices | {v}, old.type, old.anchor)
    return TreeDecomposition(bags, td.root, td.parent, td.order)


def _anchored_on(
    g: Graph, td: TreeDecomposition, verts: frozenset[str], edges: frozenset[Edge]
) -> set[int]:
    out = set()
    for b in td.bags.values():
        if b.anchor.kind == "vertex":
            if b.anchor.vertex in verts:
                out.add(b.id)
        elif g.canon(*b.anchor.edge) in edges:
            out.add(b.id)
    return out


def augment_edges(
    g: Graph,
    td: TreeDecomposition,
    tree: frozenset[Edge],
    extra: frozenset[Edge],
    col: Coloring,
    l: int,
) -> TreeDecomposition:
    """Decomposition of g plus ``extra`` chords, width grows by at most the
    feedback bound l."""
    _check_anchors(g, td, tree)
    extra = frozenset(g.canon(*e) for e in extra)
    if not extra:
        return td
    t_prime = Graph(g.vertices, tuple(tree | extra))
    check_feedback_edge_bound(t_prime, l)
    out = td
    for e in sorted(extra):
        u, v = e
        # chord endpoints may share a color; break ties by declaration order
        chosen = u if (col[u], g.index[u]) < (col[v], g.index[v]) else v
        path = tree_path(g, tree, u, v)
        if path is None:
            raise GraphError(f"chord {e!r} spans different tree components")
        cyc_edges = frozenset(
            g.canon(path[i], path[i + 1]) for i in range(len(path) - 1)
        )
        marked = _anchored_on(g, out, frozenset(path), cyc_edges)
        out = _add_to_bags(out, _steiner_closure(out, marked), chosen)
    return out


def augment_vertices(
    g: Graph,
    td: TreeDecomposition,
    tree: frozenset[Edge],
    new_vertices: frozenset[str],
    new_edges: frozenset[Edge],
    l: int,
) -> TreeDecomposition:
    """Decomposition of g extended by apex-style vertices; width grows by at
    most the feedback bound l."""
    _check_anchors(g, td, tree)
    if not new_vertices:
        return td
    for e in new_edges:
        if e[0] not in new_vertices and e[1] not in new_vertices:
            raise GraphError(f"edge {e!r} touches no new vertex")
        for v in e:
            if v not in new_vertices and v not in g.index:
                raise GraphError(f"edge {e!r} touches unknown vertex {v!r}")
    ext = extend_graph(g, new_vertices, new_edges)
    t_prime = Graph(ext.vertices, tuple(tree | frozenset(ext.canon(*e) for e in new_edges)))
    check_feedback_vertex_bound(t_prime, l)
    comps = biconnected_components(t_prime)
    out = td
    for v in sorted(new_vertices, key=ext.index.__getitem__):
        anchors_v: set[int] = set()
        touched = False
        for verts, edges in comps:
            if v not in verts:
                continue
            old_verts = verts - new_vertices
            old_edges = frozenset(e for e in edges if e in tree)
            found = _anchored_on(g, out, old_verts, old_edges)
            # edge-anchored builders leave bridge components unmarked; pin
            # each old vertex of the component through some bag holding it
            for u in old_verts:
                if not any(u in out.bags[b].vertices for b in found):
                    holding = [b for b in sorted(out.bags) if u in out.bags[b].vertices]
                    if holding:
                        found.add(holding[0])
            anchors_v |= found
            touched = touched or bool(found)
        if not touched:
            raise GraphError(
                f"new vertex {v!r} shares no biconnected component with the "
                "base graph"
            )
        out = _add_to_bags(out, _steiner_closure(out, anchors_v), v)
    return out
