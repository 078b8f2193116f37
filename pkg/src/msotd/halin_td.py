"""Width-3 decompositions of Halin graphs.

Per tree arc e = (y -> x) a component of up to seven bags is created: an
R-branch covering the tree edge, an L-branch covering the cycle edge between
x's subtree and its left sibling's subtree, joined at a top bag.  Components
are glued along the sibling order (a component hangs below L1 of its right
neighbor, the rightmost child's component below R1 of the parent arc) and
equal adjacent bags are contracted away.
"""

from __future__ import annotations

from typing import Optional

from .cycles import Arc, ChildOrder, boundary, child_order_halin
from .decomposition import Anchor, Bag, TreeDecomposition, contract_equal_bags
from .graphs import Graph, HalinInput
from .orientation import Orientation, halin_orientation


def build_halin_td(h: HalinInput, contract: bool = True) -> TreeDecomposition:
    td, _ = _build(h)
    return contract_equal_bags(td) if contract else td


def halin_parent_relation(h: HalinInput) -> dict[tuple[int, int], str]:
    """Rule tag (I, NB or P) for every parent-child bag pair of the
    uncontracted decomposition."""
    _, tags = _build(h)
    return tags


def _build(h: HalinInput) -> tuple[TreeDecomposition, dict[tuple[int, int], str]]:
    h.validate()
    g = h.graph
    o = halin_orientation(h)
    order = child_order_halin(h, o)
    bdl = {v: boundary(h, order, v, "left") for v in g.vertices}
    bdr = {v: boundary(h, order, v, "right") for v in g.vertices}

    bags: dict[int, Bag] = {}
    parent: dict[int, int] = {}
    ordermap: dict[int, list[int]] = {}
    tags: dict[tuple[int, int], str] = {}
    ids = iter(range(10 ** 9))

    def mk(vertices: set[str], btype: str, e: Arc) -> int:
        b = next(ids)
        bags[b] = Bag(b, frozenset(vertices), btype, Anchor.at_edge(g.canon(*e)))
        return b

    def link(p: int, c: int, tag: str) -> None:
        parent[c] = p
        ordermap.setdefault(p, []).append(c)
        tags[(p, c)] = tag

    # one component per tree arc; record per-arc bag ids
    comp: dict[Arc, dict[str, int]] = {}
    root_arc = (h.root, next(iter(order.child_vertices(h.root))))
    all_arcs = [(v, c) for v in g.vertices for c in order.child_vertices(v)]

    for e in all_arcs:
        y, x = e
        c: dict[str, int] = {}
        c["R1"] = mk({x, bdl[x], bdr[x]}, "R1", e)
        c["R2"] = mk({x, y, bdl[x], bdr[x]}, "R2", e)
        if y == h.root:
            comp[e] = c
            continue
        c["R3"] = mk({y, bdl[x], bdr[x]}, "R3", e)
        sibs = order.children(y)
        if sibs.index(e) > 0:
            lx = sibs[sibs.index(e) - 1][1]  # left sibling of x
            c["L1"] = mk({y, bdl[y], bdr[lx]}, "L1", e)
            c["L2"] = mk({y, bdl[y], bdr[lx], bdl[x]}, "L2", e)
            c["L3"] = mk({y, bdl[y], bdl[x]}, "L3", e)
            c["LR"] = mk({y, bdl[y], bdl[x], bdr[x]}, "LR", e)
        comp[e] = c

    def top(e: Arc) -> int:
        c = comp[e]
        if "LR" in c:
            return c["LR"]
        if "R3" in c:
            return c["R3"]
        return c["R2"]

    for e in all_arcs:
        y, x = e
        c = comp[e]
        # chains inside the component, child first
        link(c["R2"], c["R1"], "I")
        if "R3" in c:
            link(c["R3"], c["R2"], "I")
        if "LR" in c:
            link(c["LR"], c["L3"], "I")
            link(c["LR"], c["R3"], "I")
            link(c["L3"], c["L2"], "I")
            link(c["L2"], c["L1"], "I")
            sibs = order.children(y)
            left = sibs[sibs.index(e) - 1]
            link(c["L1"], top(left), "NB")
        # rightmost child arc of x hangs below this component's R1
        kids = order.children(x)
        if kids:
            link(c["R1"], top(kids[-1]), "P")

    root_bag = comp[root_arc]["R2"]
    td = TreeDecomposition(
        bags, root_bag, parent, {p: tuple(cs) for p, cs in ordermap.items()}
    )
    return td, tags
