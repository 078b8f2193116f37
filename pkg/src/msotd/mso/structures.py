"""Structure builders: package a graph instance together with the named
constants the predicate library expects (edge partition, orientation flag
set F, color classes X0..Xk, roots)."""

from __future__ import annotations

from ..graphs import Graph, HalinInput, KCycleInput
from ..orientation import (
    Coloring, Orientation, encode_orientation, halin_orientation,
    kcycle_orientation, proper_coloring,
)
from .formula import Structure


def _color_sets(g: Graph, col: Coloring, k: int) -> dict[str, frozenset]:
    return {f"X{i}": c for i, c in enumerate(col.classes(g, k))}


def halin_structure(h: HalinInput, k: int = 3) -> Structure:
    g = h.graph
    col = proper_coloring(g, k)
    flags = encode_orientation(g, col, halin_orientation(h))
    sets = {
        "V": frozenset(g.vertices),
        "E": frozenset(g.edges),
        "E_T": frozenset(g.canon(u, v) for u, v in h.tree_edges),
        "E_C": frozenset(g.canon(u, v) for u, v in h.cycle_edges),
        "F": flags,
        **_color_sets(g, col, k),
    }
    return Structure(g, {"r": h.root}, sets)


def kcycle_structure(kc: KCycleInput, k: int = 4) -> Structure:
    g = kc.graph
    col = proper_coloring(g, k)
    flags = encode_orientation(g, col, kcycle_orientation(kc))
    levels = len(kc.cycle_edges_by_level)
    by_level = {
        f"E_C{i}": frozenset(g.canon(u, v) for u, v in ec)
        for i, ec in enumerate(kc.cycle_edges_by_level, start=1)
    }
    all_cycle = frozenset().union(*by_level.values()) if by_level else frozenset()
    sets = {
        "V": frozenset(g.vertices),
        "E": frozenset(g.edges),
        "E_T": frozenset(g.canon(u, v) for u, v in kc.tree_edges),
        "E_C": all_cycle,
        "F": flags,
        **by_level,
        **_color_sets(g, col, k),
    }
    elems = {"r": kc.root, "c": kc.center}
    for i in range(1, levels):
        elems[f"r{i}"] = kc.level_root(i)
    return Structure(g, elems, sets)


def spanning_tree_structure(
    g: Graph, tree_edges, col: Coloring, k: int, root_orientation: Orientation
) -> Structure:
    """Structure for remember-number predicates: a connected graph with a
    distinguished spanning tree and an orientation of all edges."""
    flags = encode_orientation(g, col, root_orientation)
    sets = {
        "V": frozenset(g.vertices),
        "E": frozenset(g.edges),
        "E_T": frozenset(g.canon(u, v) for u, v in tree_edges),
        "E_C": frozenset(
            e for e in g.edges
            if e not in {g.canon(u, v) for u, v in tree_edges}
        ),
        "F": flags,
        **_color_sets(g, col, k),
    }
    return Structure(g, {"r": g.vertices[0]}, sets)
