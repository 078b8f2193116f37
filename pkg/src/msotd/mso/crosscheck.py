"""Differential checks: formula-level predicates against their algorithmic
counterparts, exhaustively on small fixtures.

Every check returns a report dict with a boolean ``ok`` and a list of
``mismatches``; the fixtures are a four-vertex Halin graph and a wheel
viewed as a one-level cycle tree (its spanning-star decomposition is
exactly the Halin construction, so the same bag predicates apply).
"""

from __future__ import annotations

from itertools import combinations

from ..cycles import boundary, child_order_halin, fundamental_cycle
from ..graphs import Graph, HalinInput, KCycleInput, halin4
from ..halin_td import build_halin_td
from ..orientation import halin_orientation, kcycle_orientation
from . import predicates as P
from .formula import Evaluator, Structure
from .structures import halin_structure, kcycle_structure


def wheel_kcycle(rim: int = 3) -> KCycleInput:
    """Wheel graph as a one-level cycle tree: center plus a rim cycle."""
    vs = ("c",) + tuple(f"u{i}" for i in range(1, rim + 1))
    spokes = [("c", f"u{i}") for i in range(1, rim + 1)]
    rim_edges = [
        (f"u{i}", f"u{i % rim + 1}") for i in range(1, rim + 1)
    ]
    g = Graph(vs, tuple(spokes + rim_edges))
    kc = KCycleInput(
        g,
        "c",
        frozenset(g.canon(*e) for e in spokes),
        (frozenset(g.canon(*e) for e in rim_edges),),
        (),
        "u1",
    )
    kc.validate()
    return kc


def as_halin(kc: KCycleInput) -> HalinInput:
    if kc.k != 1:
        raise ValueError("only one-level cycle trees embed as Halin inputs")
    h = HalinInput(
        kc.graph, kc.tree_edges, kc.cycle_edges_by_level[0], kc.root
    )
    h.validate()
    return h


def _vertex_subsets(g: Graph, max_size: int = 4) -> list[frozenset]:
    return [
        frozenset(c)
        for r in range(min(max_size, len(g.vertices)) + 1)
        for c in combinations(g.vertices, r)
    ]


def check_fundcyc(s: Structure, h: HalinInput) -> dict:
    g = h.graph
    fcs = [
        set(fundamental_cycle(g, h.tree_edges, c).cycle_edges)
        for c in s.sets["E_C"]
    ]
    ev = Evaluator(s)
    env0 = s.base_env()
    form = P.fund_cycle_ee("e", "f")
    mism = []
    for e in g.edges:
        for f in g.edges:
            want = any(e in fc and f in fc for fc in fcs)
            if ev.eval(form, {**env0, "e": e, "f": f}) != want:
                mism.append((e, f, want))
    return {"checked": len(g.edges) ** 2, "mismatches": mism, "ok": not mism}


def check_orinb(s: Structure, h: HalinInput, k: int) -> dict:
    g = h.graph
    ori = halin_orientation(h)
    co = child_order_halin(h, ori)
    ev = Evaluator(s)
    env0 = s.base_env()
    form = P.orinb("e", "f", k)
    mism = []
    tree = sorted(s.sets["E_T"])
    for e in tree:
        for f in tree:
            te, he = ori.tail(e), ori.head(e)
            tf, hf = ori.tail(f), ori.head(f)
            if te == tf and e != f:
                sibs = [hd for _, hd in co.children(te)]
                want = sibs.index(he) < sibs.index(hf)
            else:
                want = False
            if ev.eval(form, {**env0, "e": e, "f": f}) != want:
                mism.append((e, f, want))
    return {"checked": len(tree) ** 2, "mismatches": mism, "ok": not mism}


def check_dir_shapes(s: Structure, k: int) -> dict:
    ev = Evaluator(s)
    env0 = s.base_env()
    tree_ok = ev.eval(P.dir_tree(P.ALL_V, P.ET, k), env0)
    cyc_ok = ev.eval(P.dir_cycle(P.IncV(P.EC), P.EC, k), env0)
    mism = [n for n, v in (("dir_tree", tree_ok), ("dir_cycle", cyc_ok)) if not v]
    return {"checked": 2, "mismatches": mism, "ok": not mism}


def check_boundaries(s: Structure, h: HalinInput, k: int) -> dict:
    """bd predicates against leftmost/rightmost descent.  The tree root is
    skipped: it is a cycle vertex with children, where the predicate's
    fixed-point convention and descent differ, and no bag ever takes its
    boundary."""
    g = h.graph
    ori = halin_orientation(h)
    co = child_order_halin(h, ori)
    ev = Evaluator(s)
    env0 = s.base_env()
    fr = P.bd_r("x", "w", k)
    fl = P.bd_l("x", "w", k)
    mism = []
    checked = 0
    for v in g.vertices:
        if v == h.root:
            continue
        br = boundary(h, co, v, "right")
        bl = boundary(h, co, v, "left")
        for w in g.vertices:
            checked += 1
            if ev.eval(fr, {**env0, "x": v, "w": w}) != (w == br):
                mism.append(("bd_r", v, w))
            if ev.eval(fl, {**env0, "x": v, "w": w}) != (w == bl):
                mism.append(("bd_l", v, w))
    return {"checked": checked, "mismatches": mism, "ok": not mism}


def check_bags(s: Structure, h: HalinInput, k: int) -> dict:
    """Guarded bag predicates versus the uncontracted builder: exact truth
    on every (bag type, arc, vertex subset) triple."""
    g = h.graph
    td = build_halin_td(h, contract=False)
    want = {(b.anchor.edge, b.type): frozenset(b.vertices) for b in td.bags.values()}
    subsets = _vertex_subsets(g)
    ev = Evaluator(s)
    env0 = s.base_env()
    mism = []
    checked = 0
    for tau in P.HALIN_BAG_TYPES:
        form = P.bag_halin(tau, "e", "X", k, guarded=True)
        for e in sorted(s.sets["E_T"]):
            expected = want.get((e, tau))
            for X in subsets:
                checked += 1
                got = ev.eval(form, {**env0, "e": e, "X": X})
                if got != (expected is not None and X == expected):
                    mism.append((tau, e, tuple(sorted(X))))
    return {"checked": checked, "mismatches": mism, "ok": not mism}


def check_parent(s: Structure, h: HalinInput, k: int) -> dict:
    """Parent predicate versus the contracted decomposition, compared at
    the level of bag contents (the predicate cannot see bag identities,
    so content-equal chains collapse on both sides)."""
    g = h.graph
    td = build_halin_td(h, contract=True)
    want = set()
    for c, p in td.parent.items():
        pc = frozenset(td.bags[p].vertices), frozenset(td.bags[c].vertices)
        if pc[0] != pc[1]:
            want.add(pc)
    contents = {frozenset(b.vertices) for b in td.bags.values()}
    subsets = _vertex_subsets(g)
    ev = Evaluator(s)
    env0 = s.base_env()
    form = P.parent_halin("Xp", "Xc", k)
    bag_form = P.bag_any("X", k)
    got = {
        (Xp, Xc)
        for Xp in subsets
        for Xc in subsets
        if ev.eval(form, {**env0, "Xp": Xp, "Xc": Xc})
    }
    bag_mism = [
        tuple(sorted(X))
        for X in subsets
        if ev.eval(bag_form, {**env0, "X": X}) != (X in contents)
    ]
    mism = sorted(
        (tuple(sorted(p)), tuple(sorted(c))) for p, c in want ^ got
    ) + bag_mism
    return {
        "checked": len(subsets) ** 2 + len(subsets),
        "mismatches": mism,
        "ok": not mism,
    }


def run_halin_crosschecks(h: HalinInput | None = None, k: int = 3) -> dict:
    h = h or halin4()
    s = halin_structure(h, k)
    return {
        "fundcyc": check_fundcyc(s, h),
        "orinb": check_orinb(s, h, k),
        "dir_shapes": check_dir_shapes(s, k),
        "boundaries": check_boundaries(s, h, k),
        "bags": check_bags(s, h, k),
        "parent": check_parent(s, h, k),
    }


def run_wheel_crosschecks(rim: int = 3, k: int = 4) -> dict:
    """The one-level cycle tree fixture, checked with the same machinery
    plus its level-cycle specifics."""
    kc = wheel_kcycle(rim)
    h = as_halin(kc)
    s = kcycle_structure(kc, k)
    ev = Evaluator(s)
    env0 = s.base_env()
    level_ok = ev.eval(P.is_level_cycle(P.level_cycle_name(1), 1, k), env0)
    dist_mism = []
    for v in kc.graph.vertices:
        for n in range(3):
            want = n == (0 if v == kc.center else 1)
            if ev.eval(P.dist_eq("c", "x", P.ALL_E, n), {**env0, "x": v}) != want:
                dist_mism.append((v, n))
    out = {
        "fundcyc": check_fundcyc(s, h),
        "orinb": check_orinb(s, h, k),
        "dir_shapes": check_dir_shapes(s, k),
        "boundaries": check_boundaries(s, h, k),
        "bags": check_bags(s, h, k),
        "parent": check_parent(s, h, k),
        "level_cycle": {"checked": 1, "mismatches": [] if level_ok else ["C1"], "ok": level_ok},
        "dist": {"checked": 3 * len(kc.graph.vertices), "mismatches": dist_mism, "ok": not dist_mism},
    }
    return out


def all_ok(report: dict) -> bool:
    return all(part["ok"] for part in report.values())
