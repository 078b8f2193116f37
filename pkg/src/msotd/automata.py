"""Bottom-up property automata over tree decompositions.

Each property carries a signature: a canonical interface summary with
introduce / forget / edge / join transitions.  A run folds signatures up the
decomposition, lifting every child state to its parent bag and introducing
each graph edge exactly once, at the first postorder bag containing both
endpoints.  Signatures double as Myhill-Nerode class representatives: the
refinement audit checks them against the brute-force equivalence probe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import TerminalGraph, brute_equiv, _random_terminal_graph
from .decomposition import TreeDecomposition
from .graphs import Edge, Graph, GraphError

# A signature is (interface vertices, property-specific canonical value).
Signature = tuple[frozenset, object]

UNORDERED_FOLD_CAP = 8


@dataclass(frozen=True)
class PropertySpec:
    name: str
    brute_eval: Callable[[Graph], bool]
    empty: Signature
    introduce_vertex: Callable[[Signature, str], Signature]
    introduce_edge: Callable[[Signature, str, str], Signature]
    forget_vertex: Callable[[Signature, str], Signature]
    join: Callable[[Signature, Signature], Signature]
    accept: Callable[[Signature], bool]

    def sig_init(self, tg: TerminalGraph) -> Signature:
        """Signature of a bag-local terminal graph, built from scratch."""
        return sig_of_terminal_graph(self, tg)


def sig_of_terminal_graph(p: PropertySpec, tg: TerminalGraph) -> Signature:
    """Introduce everything, then forget the non-terminals."""
    s = p.empty
    for v in tg.graph.vertices:
        s = p.introduce_vertex(s, v)
    for u, v in tg.graph.edges:
        s = p.introduce_edge(s, u, v)
    for v in tg.graph.vertices:
        if v not in tg.terminals:
            s = p.forget_vertex(s, v)
    return s


# ---------------------------------------------------------------------------
# parity


def parity(m: int) -> PropertySpec:
    """|V| divisible by m."""
    if m < 2:
        raise GraphError("parity modulus must be at least 2")

    def intro(s: Signature, v: str) -> Signature:
        iface, val = s
        return iface | {v}, (val + 1) % m

    def edge(s: Signature, u: str, v: str) -> Signature:
        return s

    def forget(s: Signature, v: str) -> Signature:
        iface, val = s
        return iface - {v}, val

    def join(s1: Signature, s2: Signature) -> Signature:
        iface, v1 = s1
        _, v2 = s2
        return iface, (v1 + v2 - len(iface)) % m

    return PropertySpec(
        name=f"parity({m})",
        brute_eval=lambda g: len(g.vertices) % m == 0,
        empty=(frozenset(), 0),
        introduce_vertex=intro,
        introduce_edge=edge,
        forget_vertex=forget,
        join=join,
        accept=lambda s: s[1] == 0,
    )


# ---------------------------------------------------------------------------
# bipartite — value: set of proper 2-colorings of the interface that extend
# to the processed piece; empty set is the dead state.


def bipartite() -> PropertySpec:
    def intro(s: Signature, v: str) -> Signature:
        iface, val = s
        out = frozenset(
            c | {(v, b)} for c in val for b in (0, 1)
        )
        return iface | {v}, out

    def edge(s: Signature, u: str, v: str) -> Signature:
        iface, val = s
        return iface, frozenset(c for c in val if dict(c)[u] != dict(c)[v])

    def forget(s: Signature, v: str) -> Signature:
        iface, val = s
        return iface - {v}, frozenset(
            frozenset(p for p in c if p[0] != v) for c in val
        )

    def join(s1: Signature, s2: Signature) -> Signature:
        iface, v1 = s1
        _, v2 = s2
        return iface, v1 & v2

    def brute(g: Graph) -> bool:
        color: dict[str, int] = {}
        for start in g.vertices:
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for w in g.neighbors(u):
                    if w not in color:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    return PropertySpec(
        name="bipartite",
        brute_eval=brute,
        empty=(frozenset(), frozenset({frozenset()})),
        introduce_vertex=intro,
        introduce_edge=edge,
        forget_vertex=forget,
        join=join,
        accept=lambda s: bool(s[1]),
    )


# ---------------------------------------------------------------------------
# connected — value: (interface partition by component, finished-component
# count capped at 2).


def _merge_blocks(blocks: frozenset, u: str, v: str) -> frozenset:
    bu = next(b for b in blocks if u in b)
    bv = next(b for b in blocks if v in b)
    if bu == bv:
        return blocks
    return (blocks - {bu, bv}) | {bu | bv}


def connected() -> PropertySpec:
    def intro(s: Signature, v: str) -> Signature:
        iface, (blocks, fin) = s
        return iface | {v}, (blocks | {frozenset({v})}, fin)

    def edge(s: Signature, u: str, v: str) -> Signature:
        iface, (blocks, fin) = s
        return iface, (_merge_blocks(blocks, u, v), fin)

    def forget(s: Signature, v: str) -> Signature:
        iface, (blocks, fin) = s
        b = next(bl for bl in blocks if v in bl)
        if b == frozenset({v}):
            # component loses its last interface vertex: finished for good
            return iface - {v}, (blocks - {b}, min(fin + 1, 2))
        return iface - {v}, ((blocks - {b}) | {b - {v}}, fin)

    def join(s1: Signature, s2: Signature) -> Signature:
        iface, (b1, f1) = s1
        _, (b2, f2) = s2
        blocks = b1
        for bl in b2:
            vs = sorted(bl)
            for u, v in zip(vs, vs[1:]):
                blocks = _merge_blocks(blocks, u, v)
        return iface, (blocks, min(f1 + f2, 2))

    def accept(s: Signature) -> bool:
        blocks, fin = s[1]
        return len(blocks) + fin <= 1

    return PropertySpec(
        name="connected",
        brute_eval=lambda g: g.is_connected(),
        empty=(frozenset(), (frozenset(), 0)),
        introduce_vertex=intro,
        introduce_edge=edge,
        forget_vertex=forget,
        join=join,
        accept=accept,
    )


# ---------------------------------------------------------------------------
# hamiltonian cycle — value: set of configurations.  A configuration is
# (segments, closed): open path segments keyed by their interface endpoints,
# a singleton segment marking a degree-0 vertex; interface vertices in no
# segment are interior (degree 2); closed means the cycle has been completed
# and nothing may be added.

Config = tuple[frozenset, bool]


def _seg_of(segs: frozenset, v: str) -> Optional[frozenset]:
    for s in segs:
        if v in s:
            return s
    return None


def hamiltonian_cycle() -> PropertySpec:
    def intro(s: Signature, v: str) -> Signature:
        iface, val = s
        out = set()
        for segs, closed in val:
            if closed:
                continue  # a finished cycle admits no new vertex
            out.add((segs | {frozenset({v})}, False))
        return iface | {v}, frozenset(out)

    def edge(s: Signature, u: str, v: str) -> Signature:
        iface, val = s
        out = set(val)  # skipping the edge is always allowed
        for segs, closed in val:
            if closed:
                continue
            su = _seg_of(segs, u)
            sv = _seg_of(segs, v)
            if su is None or sv is None:
                continue  # an interior endpoint cannot take another edge
            if su == sv:
                if su == frozenset({u, v}) and len(segs) == 1:
                    out.add((frozenset(), True))
                continue
            a = u if su == frozenset({u}) else next(x for x in su if x != u)
            b = v if sv == frozenset({v}) else next(x for x in sv if x != v)
            out.add(((segs - {su, sv}) | {frozenset({a, b})}, False))
        return iface, frozenset(out)

    def forget(s: Signature, v: str) -> Signature:
        iface, val = s
        out = set()
        for segs, closed in val:
            if _seg_of(segs, v) is not None:
                continue  # degree below two can never recover
            out.add((segs, closed))
        return iface - {v}, frozenset(out)

    def _deg(segs: frozenset, v: str) -> int:
        seg = _seg_of(segs, v)
        if seg is None:
            return 2
        return 0 if seg == frozenset({v}) else 1

    def _combine(iface: frozenset, c1: Config, c2: Config) -> Optional[Config]:
        (g1, cl1), (g2, cl2) = c1, c2
        if cl1 and cl2:
            return None
        if cl1 or cl2:
            open_segs = g2 if cl1 else g1
            # the open side must contribute no edges at all
            if any(len(s) == 2 for s in open_segs):
                return None
            covered = {v for s in open_segs for v in s}
            if covered != iface:
                return None  # an interior open-side vertex would reach degree 4
            return frozenset(), True
        for v in iface:
            if _deg(g1, v) + _deg(g2, v) > 2:
                return None
        aux = [s for s in g1 if len(s) == 2] + [s for s in g2 if len(s) == 2]
        adj: dict[str, list[str]] = {}
        for s in aux:
            a, b = sorted(s)
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        segs: set[frozenset] = set()
        seen: set[str] = set()
        closed_count = 0
        for v in adj:
            if v in seen:
                continue
            # walk the path/cycle component
            comp = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            n_edges = sum(len(adj[x]) for x in comp) // 2
            if n_edges == len(comp):
                closed_count += 1
            else:
                ends = [x for x in comp if len(adj[x]) == 1]
                segs.add(frozenset(ends))
        for v in iface:
            if v in seen:
                continue
            if _deg(g1, v) == 0 and _deg(g2, v) == 0:
                segs.add(frozenset({v}))
        if closed_count > 1 or (closed_count == 1 and segs):
            return None  # a premature extra cycle can never be absorbed
        if closed_count == 1:
            return frozenset(), True
        return frozenset(segs), False

    def join(s1: Signature, s2: Signature) -> Signature:
        iface, v1 = s1
        _, v2 = s2
        out = set()
        for c1 in v1:
            for c2 in v2:
                c = _combine(iface, c1, c2)
                if c is not None:
                    out.add(c)
        return iface, frozenset(out)

    def brute(g: Graph) -> bool:
        n = len(g.vertices)
        if n < 3:
            return False
        idx = {v: i for i, v in enumerate(g.vertices)}
        nbr = [[idx[w] for w in g.neighbors(v)] for v in g.vertices]
        full = (1 << n) - 1
        # Held-Karp over paths anchored at vertex 0
        reach = [set() for _ in range(1 << n)]
        reach[1].add(0)
        for mask in range(1, 1 << n):
            if not (mask & 1):
                continue
            for last in list(reach[mask]):
                for w in nbr[last]:
                    if not (mask >> w) & 1:
                        reach[mask | (1 << w)].add(w)
        return any(0 in nbr[last] for last in reach[full])

    return PropertySpec(
        name="hamiltonian_cycle",
        brute_eval=brute,
        empty=(frozenset(), frozenset({(frozenset(), False)})),
        introduce_vertex=intro,
        introduce_edge=edge,
        forget_vertex=forget,
        join=join,
        accept=lambda s: any(cl for _, cl in s[1]),
    )


ALL_PROPERTIES: dict[str, Callable[[], PropertySpec]] = {
    "parity2": lambda: parity(2),
    "parity3": lambda: parity(3),
    "bipartite": bipartite,
    "connected": connected,
    "hamiltonian_cycle": hamiltonian_cycle,
}


# ---------------------------------------------------------------------------
# the runner


@dataclass
class TransitionTables:
    """Memoized introduce/forget/edge/join transitions."""

    prop: PropertySpec
    intro_memo: dict = field(default_factory=dict)
    forget_memo: dict = field(default_factory=dict)
    edge_memo: dict = field(default_factory=dict)
    join_memo: dict = field(default_factory=dict)

    def introduce(self, s: Signature, v: str) -> Signature:
        key = (s, v)
        if key not in self.intro_memo:
            self.intro_memo[key] = self.prop.introduce_vertex(s, v)
        return self.intro_memo[key]

    def forget(self, s: Signature, v: str) -> Signature:
        key = (s, v)
        if key not in self.forget_memo:
            self.forget_memo[key] = self.prop.forget_vertex(s, v)
        return self.forget_memo[key]

    def edge(self, s: Signature, u: str, v: str) -> Signature:
        key = (s, u, v)
        if key not in self.edge_memo:
            self.edge_memo[key] = self.prop.introduce_edge(s, u, v)
        return self.edge_memo[key]

    def join(self, s1: Signature, s2: Signature) -> Signature:
        key = (s1, s2)
        if key not in self.join_memo:
            self.join_memo[key] = self.prop.join(s1, s2)
        return self.join_memo[key]

    def replay_consistent(self) -> bool:
        return all(
            self.prop.introduce_vertex(s, v) == out
            for (s, v), out in self.intro_memo.items()
        ) and all(
            self.prop.join(s1, s2) == out
            for (s1, s2), out in self.join_memo.items()
        )


def assign_edges(g: Graph, td: TreeDecomposition) -> dict[int, list[Edge]]:
    """Each edge goes to the first postorder bag containing both endpoints."""
    assigned: dict[int, list[Edge]] = {b: [] for b in td.bags}
    left = set(g.edges)
    for b in td.postorder():
        bag = td.bags[b].vertices
        for e in sorted(left):
            if e[0] in bag and e[1] in bag:
                assigned[b].append(e)
                left.discard(e)
    if left:
        raise GraphError(f"edges not covered by any bag: {sorted(left)}")
    return assigned


def run_automaton(g: Graph, td: TreeDecomposition, p: PropertySpec) -> bool:
    if not td.is_ordered and td.max_child_count() > UNORDERED_FOLD_CAP:
        raise GraphError(
            "unordered decomposition with unbounded branching; supply a "
            "sibling order or keep the maximum child count at "
            f"{UNORDERED_FOLD_CAP}"
        )
    tables = TransitionTables(p)
    assigned = assign_edges(g, td)
    states: dict[int, Signature] = {}

    def lift(s: Signature, src: frozenset, dst: frozenset) -> Signature:
        for v in sorted(src - dst, key=g.index.__getitem__):
            s = tables.forget(s, v)
        for v in sorted(dst - src, key=g.index.__getitem__):
            s = tables.introduce(s, v)
        return s

    for b in td.postorder():
        bag = td.bags[b].vertices
        kids = td.children(b)
        if not kids:
            s = p.empty
            for v in g.sort_vertices(bag):
                s = tables.introduce(s, v)
        else:
            s = lift(states[kids[0]], td.bags[kids[0]].vertices, bag)
            for c in kids[1:]:
                s = tables.join(s, lift(states[c], td.bags[c].vertices, bag))
        for e in assigned[b]:
            s = tables.edge(s, e[0], e[1])
        states[b] = s
    return p.accept(states[td.root])


# ---------------------------------------------------------------------------
# refinement audit


def _canonical_sig(p: PropertySpec, tg: TerminalGraph) -> Signature:
    """Signature after renaming terminals positionally, so signatures of
    different graphs with equal arity are comparable."""
    names = {t: f"t{i}" for i, t in enumerate(tg.terminals)}
    fresh = iter(f"u{i}" for i in range(len(tg.graph.vertices)))
    for v in tg.graph.vertices:
        if v not in names:
            names[v] = next(fresh)
    rg = Graph(
        tuple(names[v] for v in tg.graph.vertices),
        tuple((names[u], names[v]) for u, v in tg.graph.edges),
    )
    return sig_of_terminal_graph(p, TerminalGraph(rg, tuple(names[t] for t in tg.terminals)))


def refinement_audit(
    p: PropertySpec, samples: int, seed: int, max_arity: int = 2, bound: int = 4
) -> dict:
    """Equal signatures must imply brute-force equivalence; brute-force
    distinguished pairs must get distinct signatures."""
    rng = random.Random(seed)
    equal_sig_pairs = distinguished_pairs = 0
    equal_sig_violations = distinguished_violations = 0
    witnesses: list[tuple[TerminalGraph, TerminalGraph]] = []
    for i in range(samples):
        arity = rng.randint(0, max_arity)
        terms = tuple(f"t{j}" for j in range(arity))
        g = _random_terminal_graph(rng, terms, f"a{i}_", extra_max=2)
        h = _random_terminal_graph(rng, terms, f"b{i}_", extra_max=2)
        sg = _canonical_sig(p, g)
        sh = _canonical_sig(p, h)
        equiv = brute_equiv(g, h, p.brute_eval, bound=bound)
        if sg == sh:
            equal_sig_pairs += 1
            if not equiv:
                equal_sig_violations += 1
                witnesses.append((g, h))
        if not equiv:
            distinguished_pairs += 1
            if sg == sh:
                distinguished_violations += 1
    return {
        "samples": samples,
        "equal_sig_pairs": equal_sig_pairs,
        "distinguished_pairs": distinguished_pairs,
        "equal_sig_but_inequivalent": equal_sig_violations,
        "distinguished_but_equal_sig": distinguished_violations,
        "witnesses": witnesses,
        "ok": equal_sig_violations == 0 and distinguished_violations == 0,
    }
