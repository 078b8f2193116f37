"""The second-order predicate library.

Parameter-instantiated formula builders over structures that carry an edge
partition (tree edges, cycle edges per level), an orientation-encoding edge
set F, a proper coloring X0..Xk, and distinguished vertices (tree root r,
cycle-level roots, center c).  Orientation convention: an edge {v, w} points
from v to w exactly when (v, w colored increasingly) iff (the edge is in F);
every predicate below is normalized to that convention.
"""

from __future__ import annotations

from itertools import count

from .formula import (
    And, CardCmp, Conn, Conn2, DegCmp, Eq, Formula, Iff, Implies, In, Inc,
    IncE, IncV, IsCycle, IsTree, Not, Or, PathBetween, Quant,
    SetName, SetOp, SetQuant, SetTerm, SubsetEq,
)

ET = SetName("E_T")
EC = SetName("E_C")
F = SetName("F")
ALL_E = SetName("E")
ALL_V = SetName("V")

_ids = count()


def _fresh(stem: str) -> str:
    return f"_{stem}{next(_ids)}"


def exists_v(var: str, *body: Formula) -> Formula:
    return Quant("exists", var, "vertex", And(*body))


def forall_v(var: str, body: Formula) -> Formula:
    return Quant("forall", var, "vertex", body)


def exists_e(var: str, *body: Formula) -> Formula:
    return Quant("exists", var, "edge", And(*body))


def forall_e(var: str, body: Formula) -> Formula:
    return Quant("forall", var, "edge", body)


def strict_subset(a: SetTerm, b: SetTerm) -> Formula:
    return And(SubsetEq(a, b), Not(SubsetEq(b, a)))


def set_eq(a: SetTerm, b: SetTerm) -> Formula:
    return And(SubsetEq(a, b), SubsetEq(b, a))


def edge_pred(e: str, v: str, w: str) -> Formula:
    """e = {v, w}"""
    return And(Inc(e, v), Inc(e, w), Not(Eq(v, w)))


def adj(v: str, w: str, edges: SetTerm) -> Formula:
    x = _fresh("e")
    return exists_e(x, In(x, edges), edge_pred(x, v, w))


# ---------------------------------------------------------------------------
# colorings and orientation


def part_v(universe: SetTerm, classes: list[SetTerm]) -> Formula:
    v = _fresh("v")
    cases = []
    for i in range(len(classes)):
        others = [Not(In(v, c)) for j, c in enumerate(classes) if j != i]
        cases.append(And(In(v, classes[i]), *others))
    return forall_v(v, Implies(In(v, universe), Or(*cases)))


def k_coloring(classes: list[SetTerm]) -> Formula:
    e, v, w = _fresh("e"), _fresh("v"), _fresh("w")
    proper = forall_e(
        e,
        forall_v(
            v,
            forall_v(
                w,
                Implies(
                    edge_pred(e, v, w),
                    And(*[Not(And(In(v, c), In(w, c))) for c in classes]),
                ),
            ),
        ),
    )
    return And(part_v(ALL_V, classes), proper)


def _classes(k: int) -> list[SetTerm]:
    return [SetName(f"X{i}") for i in range(k + 1)]


def col_lt(v: str, w: str, k: int) -> Formula:
    cs = _classes(k)
    return Or(*[
        And(In(v, cs[i]), In(w, cs[j]))
        for i in range(len(cs))
        for j in range(i + 1, len(cs))
    ])


def arc(e: str, v: str, w: str, k: int) -> Formula:
    """e is directed from v to w."""
    return And(edge_pred(e, v, w), Iff(In(e, F), col_lt(v, w, k)))


def tail_pred(e: str, v: str, k: int) -> Formula:
    w = _fresh("w")
    return exists_v(w, arc(e, v, w, k))


def head_pred(e: str, v: str, k: int) -> Formula:
    w = _fresh("w")
    return exists_v(w, arc(e, w, v, k))


# ---------------------------------------------------------------------------
# directed degrees, trees, cycles, paths


def indeg_ge(v: str, edges: SetTerm, n: int, k: int) -> Formula:
    ws = [_fresh("w") for _ in range(n)]
    conds: list[Formula] = []
    for w in ws:
        e = _fresh("e")
        conds.append(exists_e(e, In(e, edges), arc(e, w, v, k)))
    for i in range(n):
        for j in range(i + 1, n):
            conds.append(Not(Eq(ws[i], ws[j])))
    out: Formula = And(*conds)
    for w in reversed(ws):
        out = Quant("exists", w, "vertex", out)
    return out


def indeg_le(v: str, edges: SetTerm, n: int, k: int) -> Formula:
    ws = [_fresh("w") for _ in range(n + 1)]
    prem: list[Formula] = []
    for w in ws:
        e = _fresh("e")
        prem.append(exists_e(e, In(e, edges), arc(e, w, v, k)))
    eqs = [Eq(ws[i], ws[j]) for i in range(n + 1) for j in range(i + 1, n + 1)]
    out: Formula = Implies(And(*prem), Or(*eqs))
    for w in reversed(ws):
        out = Quant("forall", w, "vertex", out)
    return out


def indeg_eq(v: str, edges: SetTerm, n: int, k: int) -> Formula:
    return And(indeg_ge(v, edges, n, k), indeg_le(v, edges, n, k))


def outdeg_ge(v: str, edges: SetTerm, n: int, k: int) -> Formula:
    ws = [_fresh("w") for _ in range(n)]
    conds: list[Formula] = []
    for w in ws:
        e = _fresh("e")
        conds.append(exists_e(e, In(e, edges), arc(e, v, w, k)))
    for i in range(n):
        for j in range(i + 1, n):
            conds.append(Not(Eq(ws[i], ws[j])))
    out: Formula = And(*conds)
    for w in reversed(ws):
        out = Quant("exists", w, "vertex", out)
    return out


def outdeg_le(v: str, edges: SetTerm, n: int, k: int) -> Formula:
    ws = [_fresh("w") for _ in range(n + 1)]
    prem: list[Formula] = []
    for w in ws:
        e = _fresh("e")
        prem.append(exists_e(e, In(e, edges), arc(e, v, w, k)))
    eqs = [Eq(ws[i], ws[j]) for i in range(n + 1) for j in range(i + 1, n + 1)]
    out: Formula = Implies(And(*prem), Or(*eqs))
    for w in reversed(ws):
        out = Quant("forall", w, "vertex", out)
    return out


def outdeg_eq(v: str, edges: SetTerm, n: int, k: int) -> Formula:
    return And(outdeg_ge(v, edges, n, k), outdeg_le(v, edges, n, k))


def in_out_regular_1(vertices: SetTerm, edges: SetTerm, k: int) -> Formula:
    v = _fresh("v")
    return forall_v(
        v,
        Implies(
            In(v, vertices),
            And(indeg_eq(v, edges, 1, k), outdeg_eq(v, edges, 1, k)),
        ),
    )


def dir_cycle(vertices: SetTerm, edges: SetTerm, k: int) -> Formula:
    return And(Conn(vertices, edges), in_out_regular_1(vertices, edges, k))


def dir_tree(vertices: SetTerm, edges: SetTerm, k: int) -> Formula:
    rr, v = _fresh("r"), _fresh("v")
    rooted = exists_v(
        rr,
        In(rr, vertices),
        forall_v(
            v,
            Implies(
                In(v, vertices),
                Or(
                    And(Eq(rr, v), indeg_eq(v, edges, 0, k)),
                    And(Not(Eq(rr, v)), indeg_eq(v, edges, 1, k)),
                ),
            ),
        ),
    )
    return And(IsTree(vertices, edges), rooted)


def dir_path(s: str, t: str, edges: SetTerm, k: int) -> Formula:
    """edges form a directed s-t path; the empty set is the s = s path."""
    v = _fresh("v")
    nonempty = And(
        dir_tree(IncV(edges), edges, k),
        In(s, IncV(edges)),
        In(t, IncV(edges)),
        forall_v(v, Implies(In(v, IncV(edges)), DegCmp(v, edges, "le", 2))),
        indeg_eq(s, edges, 0, k),
        outdeg_eq(t, edges, 0, k),
    )
    return Or(And(Eq(s, t), CardCmp(edges, "eq", 0)), nonempty)


def dir_path_oriented(s: str, t: str, pathset: SetTerm, k: int) -> Formula:
    """pathset forms a directed s -> t path.  Cheap special case, correct
    whenever the ambient oriented edge set is a directed tree or a directed
    cycle: there the undirected s-t path shape is already forced, and the
    whole path points away from s exactly when no arc enters s."""
    e = _fresh("e")
    return And(
        PathBetween(s, t, pathset),
        forall_e(e, Implies(In(e, pathset), Not(head_pred(e, s, k)))),
    )


# ---------------------------------------------------------------------------
# fundamental cycles


def fund_cycle_set(cyc: SetTerm) -> Formula:
    e, e2 = _fresh("e"), _fresh("e")
    one_non_tree = exists_e(
        e,
        In(e, cyc),
        forall_e(e2, Implies(In(e2, cyc), Iff(Not(Eq(e, e2)), In(e2, ET)))),
    )
    return And(IsCycle(IncV(cyc), cyc), one_non_tree)


def fund_cycle_ee(e: str, f: str) -> Formula:
    s = _fresh("FC")
    return SetQuant(
        "exists", s, "edge",
        And(In(e, SetName(s)), In(f, SetName(s)), fund_cycle_set(SetName(s))),
        bound=ALL_E,
    )


def fund_cycle_ve(v: str, f: str) -> Formula:
    s = _fresh("FC")
    return SetQuant(
        "exists", s, "edge",
        And(In(v, IncV(SetName(s))), In(f, SetName(s)), fund_cycle_set(SetName(s))),
        bound=ALL_E,
    )


# ---------------------------------------------------------------------------
# sibling order


def orinb(e: str, f: str, k: int, cyc: SetTerm = EC, root: str = "r") -> Formula:
    p, a, b = _fresh("p"), _fresh("a"), _fresh("b")
    shared_tail = exists_v(p, exists_v(a, arc(e, p, a, k)), exists_v(b, arc(f, p, b, k)))
    fr, er = _fresh("f"), _fresh("e")
    fp, ep = _fresh("FP"), _fresh("EP")
    # the set variables hold the directed r->tail paths along the cycle;
    # the witness cycle edge of f and its path are asserted positively,
    # every witness of e is compared against universally
    premise = And(fund_cycle_ee(e, er), _path_from(root, SetName(ep), er, k))
    inner = Implies(premise, strict_subset(SetName(fp), SetName(ep)))
    quantified = exists_e(
        fr,
        In(fr, cyc),
        fund_cycle_ee(f, fr),
        SetQuant(
            "exists", fp, "edge",
            And(
                _path_from(root, SetName(fp), fr, k),
                forall_e(
                    er,
                    Implies(
                        In(er, cyc),
                        SetQuant("forall", ep, "edge", inner, bound=cyc),
                    ),
                ),
            ),
            bound=cyc,
        ),
    )
    return And(In(e, ET), In(f, ET), Not(Eq(e, f)), shared_tail, quantified)


def _path_from(root: str, pathset: SetName, target_edge: str, k: int) -> Formula:
    u = _fresh("u")
    return exists_v(
        u, tail_pred(target_edge, u, k), dir_path_oriented(root, u, pathset, k)
    )


def orinba(e: str, f: str, k: int) -> Formula:
    f2 = _fresh("f")
    return And(
        orinb(e, f, k),
        forall_e(
            f2,
            Implies(And(Not(Eq(f, f2)), orinb(e, f2, k)), orinb(f, f2, k)),
        ),
    )


def orisib(x: str, y: str, k: int) -> Formula:
    e, f = _fresh("e"), _fresh("f")
    return exists_e(e, head_pred(e, x, k), exists_e(f, head_pred(f, y, k), orinb(e, f, k)))


def orisiba(x: str, y: str, k: int) -> Formula:
    """x is the direct left sibling of y."""
    e, f = _fresh("e"), _fresh("f")
    return exists_e(e, head_pred(e, x, k), exists_e(f, head_pred(f, y, k), orinba(e, f, k)))


def child_rplus(x: str, k: int) -> Formula:
    y, z, e, e2 = _fresh("y"), _fresh("z"), _fresh("e"), _fresh("e")
    return forall_v(
        y,
        forall_v(
            z,
            forall_e(
                e,
                forall_e(
                    e2,
                    Implies(
                        And(
                            In(e, ET), In(e2, ET),
                            arc(e, y, x, k), arc(e2, y, z, k), Not(Eq(e, e2)),
                        ),
                        orinb(e2, e, k),
                    ),
                ),
            ),
        ),
    )


def child_lplus(x: str, k: int) -> Formula:
    y, z, e, e2 = _fresh("y"), _fresh("z"), _fresh("e"), _fresh("e")
    return forall_v(
        y,
        forall_v(
            z,
            forall_e(
                e,
                forall_e(
                    e2,
                    Implies(
                        And(
                            In(e, ET), In(e2, ET),
                            arc(e, y, x, k), arc(e2, y, z, k), Not(Eq(e, e2)),
                        ),
                        orinb(e, e2, k),
                    ),
                ),
            ),
        ),
    )


# ---------------------------------------------------------------------------
# boundary vertices (Halin)


def _descent(x: str, w: str, k: int, rightmost: bool) -> Formula:
    ep = _fresh("EP")
    e, z = _fresh("e"), _fresh("z")
    side = child_rplus if rightmost else child_lplus
    steps = forall_e(
        e,
        Implies(
            In(e, SetName(ep)),
            forall_v(z, Implies(head_pred(e, z, k), side(z, k))),
        ),
    )
    return SetQuant(
        "exists", ep, "edge",
        And(dir_path_oriented(x, w, SetName(ep), k), steps),
        bound=ET,
    )


def bd_r(x: str, w: str, k: int) -> Formula:
    on_cycle = And(In(x, IncV(EC)), Eq(x, w))
    return Or(on_cycle, And(In(w, IncV(EC)), _descent(x, w, k, rightmost=True)))


def bd_l(x: str, w: str, k: int) -> Formula:
    on_cycle = And(In(x, IncV(EC)), Eq(x, w))
    return Or(on_cycle, And(In(w, IncV(EC)), _descent(x, w, k, rightmost=False)))


# ---------------------------------------------------------------------------
# Halin bag types and the parent relation

HALIN_BAG_TYPES = ("R1", "R2", "R3", "L1", "L2", "L3", "LR")


def _bag_member(tau: str, x: str, y: str, xp: str, k: int) -> Formula:
    """Membership condition of x' for bag type tau of the arc y -> x."""
    u = _fresh("u")
    left_sib_bdr = exists_v(u, orisiba(u, x, k), bd_r(u, xp, k))
    by_type: dict[str, list[Formula]] = {
        "R1": [Eq(xp, x), bd_r(x, xp, k), bd_l(x, xp, k)],
        "R2": [Eq(xp, y), Eq(xp, x), bd_r(x, xp, k), bd_l(x, xp, k)],
        "R3": [Eq(xp, y), bd_r(x, xp, k), bd_l(x, xp, k)],
        "L1": [Eq(xp, y), bd_l(y, xp, k), left_sib_bdr],
        "L2": [Eq(xp, y), bd_l(y, xp, k), left_sib_bdr, bd_l(x, xp, k)],
        "L3": [Eq(xp, y), bd_l(y, xp, k), bd_l(x, xp, k)],
        "LR": [Eq(xp, y), bd_l(y, xp, k), bd_l(x, xp, k), bd_r(x, xp, k)],
    }
    return Or(*by_type[tau])


def bag_halin(tau: str, e: str, X: str, k: int, guarded: bool = True) -> Formula:
    x, y, xp = _fresh("x"), _fresh("y"), _fresh("xp")
    conds: list[Formula] = [In(e, ET), arc(e, y, x, k)]
    if guarded:
        if tau == "R3":
            conds.append(Not(Eq(y, "r")))
        elif tau in ("L1", "L2", "L3", "LR"):
            u = _fresh("u")
            conds.append(exists_v(u, orisiba(u, x, k)))
    member = forall_v(xp, Iff(In(xp, SetName(X)), _bag_member(tau, x, y, xp, k)))
    return exists_v(x, exists_v(y, And(*conds), member))


def bag_any(X: str, k: int) -> Formula:
    cases = []
    for tau in HALIN_BAG_TYPES:
        e = _fresh("e")
        cases.append(exists_e(e, bag_halin(tau, e, X, k, guarded=True)))
    return Or(*cases)


def parent_i(Xp: str, Xc: str, k: int) -> Formula:
    e = _fresh("e")
    pairs = Or(
        And(bag_halin("R1", e, Xc, k, False), bag_halin("R2", e, Xp, k, False)),
        And(bag_halin("R2", e, Xc, k, False), bag_halin("R3", e, Xp, k, False)),
        And(
            Or(bag_halin("R3", e, Xc, k, False), bag_halin("L3", e, Xc, k, False)),
            bag_halin("LR", e, Xp, k, False),
        ),
        And(bag_halin("L1", e, Xc, k, False), bag_halin("L2", e, Xp, k, False)),
        And(bag_halin("L2", e, Xc, k, False), bag_halin("L3", e, Xp, k, False)),
    )
    return exists_e(e, In(e, ET), pairs)


def parent_nb(Xp: str, Xc: str, k: int) -> Formula:
    e, e2 = _fresh("e"), _fresh("e")
    return exists_e(
        e,
        exists_e(
            e2,
            orinba(e, e2, k),
            bag_halin("LR", e, Xc, k, False),
            bag_halin("L1", e2, Xp, k, False),
        ),
    )


def parent_p(Xp: str, Xc: str, k: int) -> Formula:
    e, e2, x, y = _fresh("e"), _fresh("e"), _fresh("x"), _fresh("y")
    return exists_e(
        e,
        exists_e(
            e2,
            In(e, ET),
            In(e2, ET),
            exists_v(
                x,
                exists_v(y, arc(e, y, x, k), head_pred(e2, y, k)),
                child_rplus(x, k),
            ),
            bag_halin("LR", e, Xc, k, False),
            bag_halin("R1", e2, Xp, k, False),
        ),
    )


def parent_halin(Xp: str, Xc: str, k: int) -> Formula:
    return And(
        bag_any(Xp, k),
        bag_any(Xc, k),
        Not(set_eq(SetName(Xp), SetName(Xc))),
        Or(parent_i(Xp, Xc, k), parent_nb(Xp, Xc, k), parent_p(Xp, Xc, k)),
    )


# ---------------------------------------------------------------------------
# cycle-tree predicates (levelled cycles around a center)


def _path_len_le(v: str, w: str, edges: SetTerm, n: int) -> Formula:
    ep = _fresh("EP")
    return SetQuant(
        "exists", ep, "edge",
        And(PathBetween(v, w, SetName(ep)), CardCmp(SetName(ep), "le", n)),
        bound=edges,
    )


def dist_eq(v: str, w: str, edges: SetTerm, n: int) -> Formula:
    """Shortest-path distance between v and w through ``edges`` equals n."""
    if n == 0:
        return Eq(v, w)
    return And(
        _path_len_le(v, w, edges, n),
        Not(_path_len_le(v, w, edges, n - 1)),
    )


def is_level_cycle(es: SetTerm, i: int, k: int, center: str = "c") -> Formula:
    v = _fresh("v")
    return And(
        dir_cycle(IncV(es), es, k),
        forall_v(v, Implies(In(v, IncV(es)), dist_eq(center, v, ALL_E, i))),
    )


def level_cycle_name(i: int) -> SetName:
    return SetName(f"E_C{i}")


def level_root_name(i: int, levels: int) -> str:
    return "r" if i == levels else f"r{i}"


def orinb_level(e: str, f: str, i: int, levels: int, k: int) -> Formula:
    return orinb(e, f, k, cyc=level_cycle_name(i), root=level_root_name(i, levels))


def kcycle_orientation_sentence(levels: int, k: int) -> Formula:
    """The full existential orientation statement for a levelled cycle tree:
    a partition into a directed tree and one directed cycle per level, with
    a distinguished root per inner level."""
    parts = [ET] + [level_cycle_name(i) for i in range(1, levels + 1)]
    e = _fresh("e")
    one_of = []
    for idx in range(len(parts)):
        others = [Not(In(e, p)) for j, p in enumerate(parts) if j != idx]
        one_of.append(And(In(e, parts[idx]), *others))
    partition = forall_e(e, Or(*one_of))
    conds: list[Formula] = [partition, dir_tree(ALL_V, ET, k)]
    for i in range(1, levels + 1):
        conds.append(is_level_cycle(level_cycle_name(i), i, k))
    conds.append(In("r", IncV(level_cycle_name(levels))))
    for i in range(1, levels):
        ri = level_root_name(i, levels)
        conds.append(In(ri, IncV(level_cycle_name(i))))
        conds.append(dist_eq("r", ri, ET, levels - i))
    body: Formula = And(*conds)
    for i in range(levels - 1, 0, -1):
        body = Quant("exists", level_root_name(i, levels), "vertex", body)
    for p in reversed(parts):
        body = SetQuant("exists", p.name, "edge", body, bound=ALL_E)
    return body


def bd_level(
    v: str, w: str, i: int, levels: int, k: int,
    side: str, allowed: SetTerm = ET,
) -> Formula:
    """w is the leftmost/rightmost descendant of v on the i-th level cycle,
    reachable through ``allowed`` tree edges."""
    vc_i = IncV(level_cycle_name(i))
    ep, ep2 = _fresh("EP"), _fresh("EP")
    e, e2, w2 = _fresh("e"), _fresh("e"), _fresh("w")
    disj = []
    for j in range(1, levels + 1):
        if side == "right":
            disj.append(orinb_level(e, e2, j, levels, k))
        else:
            disj.append(orinb_level(e2, e, j, levels, k))
    rival = SetQuant(
        "exists", ep2, "edge",
        exists_v(
            w2,
            In(w2, vc_i),
            dir_path_oriented(v, w2, SetName(ep2), k),
            exists_e(e2, In(e2, SetName(ep2)), exists_e(e, In(e, SetName(ep)), Or(*disj))),
        ),
        bound=allowed,
    )
    extra = []
    if side == "left":
        u = _fresh("u")
        # the first level-i vertex on the chosen path wins
        extra.append(
            forall_v(
                u,
                Implies(
                    And(In(u, IncV(SetName(ep))), In(u, vc_i)), Eq(u, w)
                ),
            )
        )
    path_case = SetQuant(
        "exists", ep, "edge",
        And(In(w, vc_i), dir_path_oriented(v, w, SetName(ep), k), Not(rival), *extra),
        bound=allowed,
    )
    return Or(And(In(v, vc_i), Eq(v, w)), path_case)


def nb_r_closure(e: str, out: str, k: int) -> Formula:
    """out = the set holding e and all its right sibling edges."""
    f = _fresh("f")
    return forall_e(
        f,
        Iff(In(f, SetName(out)), Or(Eq(f, e), orinb(e, f, k))),
    )


def carry_bd_r(e: str, z: str, j: int, levels: int, k: int) -> Formula:
    x, y, z2, nbr = _fresh("x"), _fresh("y"), _fresh("z"), _fresh("NBR")
    no_left = Not(exists_v(z2, bd_level(x, z2, j, levels, k, "left")))
    carried = SetQuant(
        "exists", nbr, "edge",
        And(
            nb_r_closure(e, nbr, k),
            bd_level(y, z, j, levels, k, "right", allowed=SetOp("minus", ET, SetName(nbr))),
        ),
        bound=ET,
    )
    return exists_v(x, exists_v(y, arc(e, y, x, k), no_left, carried))


def bag_kcycle(tau: str, e: str, X: str, i: int, levels: int, k: int) -> Formula:
    """Bag types for the levelled construction; i is the level of the child
    endpoint x (the head of the arc), so the parent endpoint y sits at
    level i - 1."""
    x, y, zp = _fresh("x"), _fresh("y"), _fresh("z")

    def bds(v: str, side: str, lo: int, allowed: SetTerm = ET) -> list[Formula]:
        return [
            bd_level(v, zp, j, levels, k, side, allowed)
            for j in range(lo + 1, levels + 1)
        ]

    nbr = _fresh("NBR")

    def carried() -> Formula:
        return SetQuant(
            "exists", nbr, "edge",
            And(
                nb_r_closure(e, nbr, k),
                Or(*[
                    bd_level(y, zp, j, levels, k, "right",
                             allowed=SetOp("minus", ET, SetName(nbr)))
                    for j in range(i + 1, levels + 1)
                ]),
            ),
            bound=ET,
        )

    if tau == "R1":
        member = Or(Eq(zp, x), *bds(x, "left", i), *bds(x, "right", i))
    elif tau == "R2":
        member = Or(Eq(zp, x), Eq(zp, y), *bds(x, "left", i), *bds(x, "right", i))
    elif tau == "L1":
        member = Or(Eq(zp, y), *bds(y, "left", i - 1), carried())
    elif tau == "L2":
        member = Or(Eq(zp, y), *bds(y, "left", i), *bds(x, "left", i), carried())
    elif tau == "L3":
        carry = [carry_bd_r(e, zp, j, levels, k) for j in range(i + 1, levels + 1)]
        member = Or(Eq(zp, y), *bds(y, "left", i), *bds(x, "left", i), *carry)
    elif tau == "LR":
        carry = [carry_bd_r(e, zp, j, levels, k) for j in range(i + 1, levels + 1)]
        member = Or(
            Eq(zp, y), *bds(x, "left", i), *bds(x, "right", i),
            *bds(y, "left", i), *carry,
        )
    else:
        raise ValueError(f"unknown bag type {tau!r}")
    return exists_v(
        x,
        exists_v(
            y,
            In(e, ET),
            arc(e, y, x, k),
            forall_v(zp, Iff(In(zp, SetName(X)), member)),
        ),
    )


# ---------------------------------------------------------------------------
# feedback additions


def feedback_edge_extra(anchor_edge: str, X: str, k: int, extra: SetTerm) -> Formula:
    """X holds exactly the lower-colored endpoints of extra edges whose
    fundamental cycle passes through the anchor edge."""
    vp, ep, w = _fresh("v"), _fresh("e"), _fresh("w")
    cond = exists_e(
        ep,
        In(ep, extra),
        Inc(ep, vp),
        fund_cycle_ee(anchor_edge, ep),
        forall_v(
            w,
            Implies(And(Not(Eq(vp, w)), Inc(ep, w)), col_lt(vp, w, k)),
        ),
    )
    return forall_v(vp, Iff(In(vp, SetName(X)), cond))


def feedback_vertex_extra(anchor_vertex: str, X: str, new_vertices: SetTerm) -> Formula:
    """X holds exactly the new vertices sharing a biconnected component
    (of the tree plus induced edges) with the anchor."""
    vp, v2 = _fresh("v"), _fresh("V2")
    comp_edges = SetOp(
        "union", ET, IncE(SetOp("minus", SetName(v2), new_vertices))
    )
    cond = And(
        In(vp, new_vertices),
        SetQuant(
            "exists", v2, "vertex",
            And(
                In(anchor_vertex, SetName(v2)),
                In(vp, SetName(v2)),
                Conn2(SetName(v2), comp_edges),
            ),
            bound=ALL_V,
        ),
    )
    return forall_v(vp, Iff(In(vp, SetName(X)), cond))


# ---------------------------------------------------------------------------
# remember numbers


def vr_le(kappa: int) -> Formula:
    v = _fresh("v")
    es = [_fresh("e") for _ in range(kappa + 1)]
    prem = [And(Not(In(e, ET)), fund_cycle_ve(v, e)) for e in es]
    eqs = [Eq(es[i], es[j]) for i in range(len(es)) for j in range(i + 1, len(es))]
    body: Formula = Implies(And(*prem), Or(*eqs))
    for e in reversed(es):
        body = Quant("forall", e, "edge", body)
    return forall_v(v, body)


def er_le(lam: int) -> Formula:
    e0 = _fresh("e")
    es = [_fresh("e") for _ in range(lam + 1)]
    prem = [And(Not(In(e, ET)), fund_cycle_ee(e0, e)) for e in es]
    eqs = [Eq(es[i], es[j]) for i in range(len(es)) for j in range(i + 1, len(es))]
    body: Formula = Implies(And(*prem), Or(*eqs))
    for e in reversed(es):
        body = Quant("forall", e, "edge", body)
    return forall_e(e0, body)


def remember_bag_v(v: str, X: str) -> Formula:
    vp, e = _fresh("v"), _fresh("e")
    cond = Or(
        Eq(vp, v),
        exists_e(e, Not(In(e, ET)), Inc(e, vp), fund_cycle_ve(v, e)),
    )
    return forall_v(vp, Iff(In(vp, SetName(X)), cond))


def remember_bag_e(e: str, X: str) -> Formula:
    vp, e2 = _fresh("v"), _fresh("e")
    cond = Or(
        Inc(e, vp),
        exists_e(e2, Not(In(e2, ET)), Inc(e2, vp), fund_cycle_ee(e, e2)),
    )
    return forall_v(vp, Iff(In(vp, SetName(X)), cond))


def remember_parent(Xp: str, Xc: str, k: int) -> Formula:
    v, e = _fresh("v"), _fresh("e")
    return exists_v(
        v,
        exists_e(
            e,
            In(e, ET),
            Or(
                And(remember_bag_v(v, Xp), remember_bag_e(e, Xc), tail_pred(e, v, k)),
                And(remember_bag_v(v, Xc), remember_bag_e(e, Xp), head_pred(e, v, k)),
            ),
        ),
    )


def remember_orinb_sets(Xa: str, Xb: str, k: int) -> Formula:
    ea, eb = _fresh("e"), _fresh("e")
    return exists_e(
        ea,
        In(ea, ET),
        exists_e(
            eb,
            In(eb, ET),
            remember_bag_e(ea, Xa),
            remember_bag_e(eb, Xb),
            orinb(ea, eb, k),
        ),
    )


# ---------------------------------------------------------------------------
# recognizability schemata.  The class-membership sentence quantifies one
# edge set per (class, bag type) pair; its exhaustive evaluation is
# exponential in 7r set variables, so it is constructed for documentation
# and micro-instance spot checks only and trips the budget guard on
# anything larger.


def class_membership_sentence(r: int, k: int, accepting: tuple[int, ...] = (1,)) -> Formula:
    if r > 2:
        raise ValueError("class-membership sentence restricted to r <= 2")
    class_sets = {
        (i, tau): f"C{i}_{tau}"
        for i in range(1, r + 1)
        for tau in ("R1", "R2", "R3", "L1", "L2", "L3", "LR")
    }
    X, e = _fresh("X"), _fresh("e")
    leaf = SetQuant(
        "forall", X, "vertex",
        forall_e(
            e,
            Implies(
                And(bag_halin("R1", e, X, k), CardCmp(SetName(X), "eq", 1)),
                In(e, SetName(class_sets[(1, "R1")])),
            ),
        ),
        bound=ALL_V,
    )
    e2 = _fresh("e")
    root_x = _fresh("X")
    root = SetQuant(
        "forall", root_x, "vertex",
        forall_e(
            e2,
            Implies(
                bag_halin("R2", e2, root_x, k),
                Or(*[
                    In(e2, SetName(class_sets[(i, "R2")])) for i in accepting
                ]),
            ),
        ),
        bound=ALL_V,
    )
    body: Formula = And(leaf, root)
    for name in sorted(class_sets.values(), reverse=True):
        body = SetQuant("exists", name, "edge", body, bound=ALL_E)
    return body
