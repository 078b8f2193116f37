"""Width-4k decompositions of k-cycle trees.

Same component scheme as the Halin builder, but each component tracks up to
k cycle levels of boundary vertices and there is no R3 bag.  The sibling
order at a vertex sorts outward children by decreasing position of their
cycle vertex along its level cycle (measured from that level's root); an
inward child (toward the center) slots into the gap its subtree occupies on
the next cycle.
"""

from __future__ import annotations

from typing import Optional

from .cycles import (
    Arc,
    ChildOrder,
    _rooted_children,
    directed_cycle_positions,
    ith_boundary,
    right_neighbor_closure,
)
from .decomposition import Anchor, Bag, TreeDecomposition, contract_equal_bags
from .graphs import Edge, Graph, KCycleInput
from .orientation import kcycle_orientation


def kcycle_child_order(kc: KCycleInput) -> ChildOrder:
    g = kc.graph
    o = kcycle_orientation(kc)
    lvl = kc.level
    pos = [
        directed_cycle_positions(o, ec, kc.level_root(i))
        for i, ec in enumerate(kc.cycle_edges_by_level, start=1)
    ]

    def cycle_pos(v: str) -> int:
        return pos[lvl[v] - 1][v]

    children = _rooted_children(g, kc.tree_edges, kc.root)
    order: dict[str, tuple[Arc, ...]] = {}
    for v in g.vertices:
        outward = [c for c in children[v] if lvl[c] == lvl[v] + 1]
        inward = [c for c in children[v] if lvl[c] == lvl[v] - 1]
        keys = {c: float(cycle_pos(c)) for c in outward}
        if inward:
            # the inward subtree fills the position gap left by the outward
            # block on the next cycle; slot it right after the low run
            nring = len(pos[lvl[v]]) if lvl[v] < kc.k else 0
            taken = {cycle_pos(c) for c in outward}
            a = 0
            while (a + 1) in taken:
                a += 1
            keys[inward[0]] = a + 0.5
        kids = sorted(children[v], key=lambda c: -keys[c])
        order[v] = tuple((v, c) for c in kids)
    return ChildOrder(order)


def build_kcycle_td(kc: KCycleInput, contract: bool = True) -> TreeDecomposition:
    kc.validate()
    g = kc.graph
    k = kc.k
    lvl = kc.level
    order = kcycle_child_order(kc)

    def bd(v: str, j: int, side: str, restricted: Optional[frozenset[Edge]] = None):
        return ith_boundary(kc, order, v, j, side, restricted)

    def r_levels(x: str) -> range:
        return range(lvl[x] + 1, k + 1)

    bags: dict[int, Bag] = {}
    parent: dict[int, int] = {}
    ordermap: dict[int, list[int]] = {}
    ids = iter(range(10 ** 9))

    def mk(vertices: set[str], btype: str, e: Arc) -> int:
        b = next(ids)
        bags[b] = Bag(b, frozenset(v for v in vertices if v is not None), btype,
                      Anchor.at_edge(g.canon(*e)))
        return b

    comp: dict[Arc, dict[str, int]] = {}
    all_arcs = [(v, c) for v in g.vertices for c in order.child_vertices(v)]

    for e in all_arcs:
        y, x = e
        c: dict[str, int] = {}
        r1 = {x}
        for j in r_levels(x):
            r1.add(bd(x, j, "left"))
            r1.add(bd(x, j, "right"))
        c["R1"] = mk(r1, "R1", e)
        c["R2"] = mk(r1 | {y}, "R2", e)
        sibs = order.children(y)
        if y != kc.root and sibs.index(e) > 0:
            restr = kc.tree_edges - frozenset(
                g.canon(*f) for f in right_neighbor_closure(order, e)
            )
            carried: dict[int, Optional[str]] = {}
            protected = {y}
            for j in range(lvl[y] + 1, k + 1):
                protected.add(bd(y, j, "left"))
                carried[j] = bd(y, j, "right", restr)
            c["L1"] = mk(protected | set(carried.values()), "L1", e)
            xl: dict[int, Optional[str]] = {}
            if x != kc.center:
                protected.add(x)
            lo = min(lvl[x], lvl[y])
            for j in range(lo + 1, k + 1):
                xl[j] = bd(x, j, "left")
                protected.add(xl[j])
            c["L2"] = mk(protected | set(carried.values()), "L2", e)
            kept = set()
            for j, z in carried.items():
                if z is None or z in protected:
                    continue
                # z is forgotten once the covered cycle edge at its level is
                # in the bag; left boundaries are never dropped
                zl = xl.get(j)
                if zl is not None and g.canon(z, zl) in kc.cycle_edges_by_level[j - 1]:
                    continue
                kept.add(z)
            l3 = protected | kept
            c["L3"] = mk(l3, "L3", e)
            c["LR"] = mk(l3 | r1 | {y}, "LR", e)
        comp[e] = c

    def link(p: int, ch: int) -> None:
        parent[ch] = p
        ordermap.setdefault(p, []).append(ch)

    def top(e: Arc) -> int:
        c = comp[e]
        return c["LR"] if "LR" in c else c["R2"]

    for e in all_arcs:
        y, x = e
        c = comp[e]
        link(c["R2"], c["R1"])
        if "LR" in c:
            link(c["LR"], c["L3"])
            link(c["LR"], c["R2"])
            link(c["L3"], c["L2"])
            link(c["L2"], c["L1"])
            sibs = order.children(y)
            link(c["L1"], top(sibs[sibs.index(e) - 1]))
        kids = order.children(x)
        if kids:
            link(c["R1"], top(kids[-1]))

    root_arc = order.children(kc.root)[0]
    td = TreeDecomposition(
        bags,
        comp[root_arc]["R2"],
        parent,
        {p: tuple(cs) for p, cs in ordermap.items()},
    )
    return contract_equal_bags(td) if contract else td
