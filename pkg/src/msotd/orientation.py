"""Proper colorings and the coloring-plus-flag-set encoding of edge
orientations, plus the canonical orientation of a Halin instance (spanning
tree directed away from the root leaf, outer cycle directed along the
rotation order)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional

from .graphs import Edge, Graph, GraphError, HalinInput, KCycleInput


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    """Proper vertex coloring with colors 0..k."""

    colors: Mapping[str, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", dict(self.colors))

    def __getitem__(self, v: str) -> int:
        return self.colors[v]

    def check_proper(self, g: Graph) -> None:
        for v in g.vertices:
            if v not in self.colors:
                raise ColoringError(f"vertex {v!r} uncolored")
        for u, v in g.edges:
            if self.colors[u] == self.colors[v]:
                raise ColoringError(f"edge ({u!r},{v!r}) monochromatic")

    def classes(self, g: Graph, k: int) -> list[frozenset[str]]:
        """Color classes X_0 .. X_k (possibly empty)."""
        return [
            frozenset(v for v in g.vertices if self.colors[v] == i)
            for i in range(k + 1)
        ]


@dataclass(frozen=True)
class Orientation:
    """Total edge orientation: canonical edge -> (tail, head)."""

    arcs: Mapping[Edge, tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", dict(self.arcs))

    def head(self, e: Edge) -> str:
        return self.arcs[e][1]

    def tail(self, e: Edge) -> str:
        return self.arcs[e][0]

    def check_total(self, g: Graph) -> None:
        for e in g.edges:
            if e not in self.arcs:
                raise GraphError(f"edge {e!r} unoriented")
            t, h = self.arcs[e]
            if {t, h} != {e[0], e[1]}:
                raise GraphError(f"arc for {e!r} uses wrong endpoints")


@dataclass(frozen=True)
class OrientationWitness:
    coloring: Coloring
    flag_set: frozenset[Edge]


def proper_coloring(g: Graph, k: int, order: Optional[list[str]] = None) -> Coloring:
    """Proper coloring with at most k+1 colors.

    With an elimination-style ``order`` supplied, colors greedily along it.
    Otherwise greedy on declaration order, falling back to exact search for
    graphs of at most 20 vertices.
    """
    seq = order if order is not None else list(g.vertices)
    colors: dict[str, int] = {}
    ok = True
    for v in seq:
        used = {colors[w] for w in g.neighbors(v) if w in colors}
        c = next((i for i in range(k + 1) if i not in used), None)
        if c is None:
            ok = False
            break
        colors[v] = c
    if ok and len(colors) == len(g.vertices):
        return Coloring(colors)
    if order is not None or len(g.vertices) > 20:
        raise ColoringError(f"greedy coloring needs more than {k + 1} colors")
    found = _exact_coloring(g, k + 1)
    if found is None:
        raise ColoringError(f"graph admits no {k + 1}-coloring")
    return Coloring(found)


def _exact_coloring(g: Graph, ncolors: int) -> Optional[dict[str, int]]:
    verts = list(g.vertices)
    colors: dict[str, int] = {}

    def rec(i: int) -> bool:
        if i == len(verts):
            return True
        v = verts[i]
        used = {colors[w] for w in g.neighbors(v) if w in colors}
        # symmetry break: never introduce color c before all colors < c appeared
        cap = min(ncolors, (max(colors.values()) + 2) if colors else 1)
        for c in range(cap):
            if c in used:
                continue
            colors[v] = c
            if rec(i + 1):
                return True
            del colors[v]
        return False

    return dict(colors) if rec(0) else None


def encode_orientation(g: Graph, col: Coloring, target: Orientation) -> frozenset[Edge]:
    """Flag set F: e = {v,w} is in F iff its head has the larger color."""
    col.check_proper(g)
    target.check_total(g)
    flags = set()
    for e in g.edges:
        tail, head = target.arcs[e]
        if col[tail] < col[head]:
            flags.add(e)
    return frozenset(flags)


def decode_orientation(g: Graph, w: OrientationWitness) -> Orientation:
    w.coloring.check_proper(g)
    arcs = {}
    for e in g.edges:
        u, v = e
        lo, hi = (u, v) if w.coloring[u] < w.coloring[v] else (v, u)
        arcs[e] = (lo, hi) if e in w.flag_set else (hi, lo)
    return Orientation(arcs)


def halin_orientation(h: HalinInput) -> Orientation:
    """Direct tree edges away from the root leaf and the cycle along the
    leaf rotation starting at the root."""
    g = h.graph
    arcs: dict[Edge, tuple[str, str]] = {}
    # tree: BFS from root
    tadj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v in h.tree_edges:
        tadj[u].append(v)
        tadj[v].append(u)
    seen = {h.root}
    frontier = [h.root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in tadj[u]:
                if w not in seen:
                    seen.add(w)
                    arcs[g.canon(u, w)] = (u, w)
                    nxt.append(w)
        frontier = nxt
    # cycle: walk from root; successor = cycle neighbor with smaller
    # declaration index (matches the rotation of generated instances)
    cadj: dict[str, list[str]] = {}
    for u, v in h.cycle_edges:
        cadj.setdefault(u, []).append(v)
        cadj.setdefault(v, []).append(u)
    succ = min(cadj[h.root], key=g.index.__getitem__)
    prev, cur = h.root, succ
    arcs[g.canon(h.root, succ)] = (h.root, succ)
    while cur != h.root:
        nxt = next(w for w in cadj[cur] if w != prev)
        arcs[g.canon(cur, nxt)] = (cur, nxt)
        prev, cur = cur, nxt
    return Orientation(arcs)


def kcycle_orientation(kc: KCycleInput) -> Orientation:
    """Tree edges away from the outer root r; every level cycle directed
    starting at its level root, successor chosen by declaration index."""
    g = kc.graph
    arcs: dict[Edge, tuple[str, str]] = {}
    tadj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v in kc.tree_edges:
        tadj[u].append(v)
        tadj[v].append(u)
    seen = {kc.root}
    frontier = [kc.root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in tadj[u]:
                if w not in seen:
                    seen.add(w)
                    arcs[g.canon(u, w)] = (u, w)
                    nxt.append(w)
        frontier = nxt
    for i, ec in enumerate(kc.cycle_edges_by_level, start=1):
        start = kc.level_root(i)
        cadj: dict[str, list[str]] = {}
        for u, v in ec:
            cadj.setdefault(u, []).append(v)
            cadj.setdefault(v, []).append(u)
        succ = min(cadj[start], key=g.index.__getitem__)
        prev, cur = start, succ
        arcs[g.canon(start, succ)] = (start, succ)
        while cur != start:
            nxt2 = next(w for w in cadj[cur] if w != prev)
            arcs[g.canon(cur, nxt2)] = (cur, nxt2)
            prev, cur = cur, nxt2
    return Orientation(arcs)
