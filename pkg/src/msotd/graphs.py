"""Core graph types: simple undirected graphs, plane trees, and the annotated
inputs (tree/cycle edge partitions) consumed by the decomposition builders.

Vertex labels are opaque strings.  All orderings used elsewhere in the package
derive from declaration order, never from label lexicography, so fixtures stay
stable under renaming.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence


class GraphError(ValueError):
    """Malformed graph input (loops, parallel edges, dangling endpoints...)."""


Edge = tuple[str, str]


def _norm_pair(u: str, v: str, index: Mapping[str, int]) -> Edge:
    """Canonical edge representation: endpoint with smaller declaration index first."""
    return (u, v) if index[u] <= index[v] else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with ordered vertex set.

    ``edges`` are stored in declaration order, each pair oriented so the
    endpoint declared first comes first.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        index = {v: i for i, v in enumerate(self.vertices)}
        canon = []
        eseen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at {u!r}")
            if u not in index or v not in index:
                raise GraphError(f"edge ({u!r},{v!r}) has an undeclared endpoint")
            e = _norm_pair(u, v, index)
            if e in eseen:
                raise GraphError(f"parallel edge ({u!r},{v!r})")
            eseen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(canon))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def _adj(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns, key=self.index.__getitem__)) for v, ns in nbrs.items()}

    def canon(self, u: str, v: str) -> Edge:
        return _norm_pair(u, v, self.index)

    def canon_edges(self, pairs: Iterable[tuple[str, str]]) -> frozenset[Edge]:
        return frozenset(self.canon(u, v) for u, v in pairs)

    def has_edge(self, u: str, v: str) -> bool:
        return self.canon(u, v) in self.edge_set

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def sort_vertices(self, vs: Iterable[str]) -> list[str]:
        return sorted(vs, key=self.index.__getitem__)

    def induced(self, vs: Iterable[str]) -> "Graph":
        keep = set(vs)
        verts = tuple(v for v in self.vertices if v in keep)
        edges = tuple(e for e in self.edges if e[0] in keep and e[1] in keep)
        return Graph(verts, edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def to_json_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def serialize(self) -> str:
        return json.dumps(self.to_json_dict())


def parse_graph(text: str) -> Graph:
    """Parse the graph JSON schema into a validated ``Graph``.

    Vertex order is document order.  Raises ``GraphError`` with a distinct
    message for malformed JSON, duplicate vertices, loops, parallel edges and
    dangling endpoints.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from exc
    return graph_from_json_dict(doc)


def graph_from_json_dict(doc: dict) -> Graph:
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphError("document must contain 'vertices' and 'edges'")
    verts = doc["vertices"]
    edges = doc["edges"]
    if not all(isinstance(v, str) for v in verts):
        raise GraphError("vertices must be strings")
    pairs = []
    for e in edges:
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise GraphError(f"edge {e!r} is not a pair")
        pairs.append((e[0], e[1]))
    return Graph(tuple(verts), tuple(pairs))


@dataclass(frozen=True)
class PlaneTree:
    """Rooted tree with an explicit child rotation per vertex."""

    root: str
    children: Mapping[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "children", {v: tuple(cs) for v, cs in self.children.items()}
        )
        # reachability / partition check
        seen = set()
        order = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            if v in seen:
                raise GraphError(f"vertex {v!r} reachable twice (not a tree)")
            seen.add(v)
            order.append(v)
            stack.extend(reversed(self.children.get(v, ())))
        for v in self.children:
            if v not in seen:
                raise GraphError(f"orphan child list at {v!r}")

    def child_list(self, v: str) -> tuple[str, ...]:
        return self.children.get(v, ())

    @cached_property
    def preorder(self) -> tuple[str, ...]:
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.child_list(v)))
        return tuple(out)

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        return tuple(v for v in self.preorder if not self.child_list(v))

    def tree_degree(self, v: str) -> int:
        d = len(self.child_list(v))
        if v != self.root:
            d += 1
        return d


@dataclass(frozen=True)
class HalinInput:
    """A Halin graph with its spanning tree / outer cycle edge partition."""

    graph: Graph
    tree_edges: frozenset[Edge]
    cycle_edges: frozenset[Edge]
    root: str

    def validate(self) -> None:
        g = self.graph
        if self.tree_edges | self.cycle_edges != g.edge_set or self.tree_edges & self.cycle_edges:
            raise GraphError("tree/cycle edges must partition the edge set")
        tdeg = {v: 0 for v in g.vertices}
        for u, v in self.tree_edges:
            tdeg[u] += 1
            tdeg[v] += 1
        if len(self.tree_edges) != len(g.vertices) - 1 or not _spans(g, self.tree_edges):
            raise GraphError("tree edges do not form a spanning tree")
        if any(d == 2 for d in tdeg.values()):
            raise GraphError("spanning tree has a degree-2 vertex")
        leaves = {v for v, d in tdeg.items() if d == 1}
        cdeg = {v: 0 for v in g.vertices}
        for u, v in self.cycle_edges:
            cdeg[u] += 1
            cdeg[v] += 1
        on_cycle = {v for v, d in cdeg.items() if d > 0}
        if on_cycle != leaves or any(cdeg[v] != 2 for v in on_cycle):
            raise GraphError("cycle edges must form a single cycle through the tree leaves")
        if not _single_cycle(self.cycle_edges, on_cycle):
            raise GraphError("cycle edges form more than one cycle")
        if self.root not in leaves:
            raise GraphError("root must be a tree leaf on the cycle")

    @cached_property
    def tree_leaves(self) -> frozenset[str]:
        tdeg: dict[str, int] = {v: 0 for v in self.graph.vertices}
        for u, v in self.tree_edges:
            tdeg[u] += 1
            tdeg[v] += 1
        return frozenset(v for v, d in tdeg.items() if d == 1)

    def to_json_dict(self) -> dict:
        doc = self.graph.to_json_dict()
        idx = self.graph.index
        doc["tree_edges"] = sorted([list(e) for e in self.tree_edges], key=lambda e: (idx[e[0]], idx[e[1]]))
        doc["cycle_edges"] = sorted([list(e) for e in self.cycle_edges], key=lambda e: (idx[e[0]], idx[e[1]]))
        doc["root"] = self.root
        return doc

    @staticmethod
    def from_json_dict(doc: dict) -> "HalinInput":
        g = graph_from_json_dict(doc)
        for key in ("tree_edges", "cycle_edges", "root"):
            if key not in doc:
                raise GraphError(f"missing {key!r} for a Halin input")
        h = HalinInput(
            g,
            g.canon_edges((e[0], e[1]) for e in doc["tree_edges"]),
            g.canon_edges((e[0], e[1]) for e in doc["cycle_edges"]),
            doc["root"],
        )
        h.validate()
        return h


@dataclass(frozen=True)
class KCycleInput:
    """A k-cycle tree: spanning tree from a central vertex plus one cycle per
    tree-distance level, every non-center vertex on exactly one cycle."""

    graph: Graph
    center: str
    tree_edges: frozenset[Edge]
    cycle_edges_by_level: tuple[frozenset[Edge], ...]
    level_roots: tuple[str, ...]  # r_1 .. r_{k-1}
    root: str  # tree root r on the outermost cycle

    @property
    def k(self) -> int:
        return len(self.cycle_edges_by_level)

    @cached_property
    def level(self) -> dict[str, int]:
        """Tree-distance of each vertex from the center."""
        tadj: dict[str, list[str]] = {v: [] for v in self.graph.vertices}
        for u, v in self.tree_edges:
            tadj[u].append(v)
            tadj[v].append(u)
        dist = {self.center: 0}
        frontier = [self.center]
        while frontier:
            nxt = []
            for u in frontier:
                for w in tadj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def validate(self) -> None:
        g = self.graph
        all_cycle = frozenset().union(*self.cycle_edges_by_level) if self.cycle_edges_by_level else frozenset()
        if self.tree_edges | all_cycle != g.edge_set or self.tree_edges & all_cycle:
            raise GraphError("tree edges and level cycles must partition the edge set")
        if len(self.tree_edges) != len(g.vertices) - 1 or not _spans(g, self.tree_edges):
            raise GraphError("tree edges do not form a spanning tree")
        lvl = self.level
        if len(lvl) != len(g.vertices):
            raise GraphError("spanning tree is disconnected")
        k = self.k
        seen_on_cycle: set[str] = set()
        for d, ec in enumerate(self.cycle_edges_by_level, start=1):
            want = {v for v in g.vertices if lvl[v] == d}
            cdeg = {v: 0 for v in want}
            for u, v in ec:
                if u not in want or v not in want:
                    raise GraphError(f"level-{d} cycle touches a vertex at the wrong distance")
                cdeg[u] += 1
                cdeg[v] += 1
            if any(c != 2 for c in cdeg.values()) or not _single_cycle(ec, want):
                raise GraphError(f"level-{d} edges do not form one cycle through all level-{d} vertices")
            seen_on_cycle |= want
        if seen_on_cycle != set(g.vertices) - {self.center}:
            raise GraphError("every non-center vertex must lie on exactly one cycle")
        if lvl[self.root] != k:
            raise GraphError("tree root must lie on the outermost cycle")
        if len(self.level_roots) != max(k - 1, 0):
            raise GraphError("need one level root per inner cycle")
        for i, ri in enumerate(self.level_roots, start=1):
            if lvl[ri] != i:
                raise GraphError(f"level root r_{i} not on cycle {i}")
            if _tree_dist(self, self.root, ri) != k - i:
                raise GraphError(f"level root r_{i} not at tree-distance {k - i} from the root")

    def level_root(self, i: int) -> str:
        """Root vertex of cycle ``C_i`` (the tree root for the outermost level)."""
        if i == self.k:
            return self.root
        return self.level_roots[i - 1]

    def to_json_dict(self) -> dict:
        doc = self.graph.to_json_dict()
        idx = self.graph.index
        key = lambda e: (idx[e[0]], idx[e[1]])
        doc["center"] = self.center
        doc["tree_edges"] = sorted([list(e) for e in self.tree_edges], key=key)
        doc["cycle_edges_by_level"] = [
            sorted([list(e) for e in ec], key=key) for ec in self.cycle_edges_by_level
        ]
        doc["level_roots"] = list(self.level_roots)
        doc["root"] = self.root
        return doc

    @staticmethod
    def from_json_dict(doc: dict) -> "KCycleInput":
        g = graph_from_json_dict(doc)
        for key in ("center", "tree_edges", "cycle_edges_by_level", "level_roots", "root"):
            if key not in doc:
                raise GraphError(f"missing {key!r} for a k-cycle input")
        kc = KCycleInput(
            g,
            doc["center"],
            g.canon_edges((e[0], e[1]) for e in doc["tree_edges"]),
            tuple(g.canon_edges((e[0], e[1]) for e in ec) for ec in doc["cycle_edges_by_level"]),
            tuple(doc["level_roots"]),
            doc["root"],
        )
        kc.validate()
        return kc


def _spans(g: Graph, edges: frozenset[Edge]) -> bool:
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if not g.vertices:
        return True
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


def _single_cycle(edges: frozenset[Edge], verts: set[str]) -> bool:
    if not verts:
        return False
    adj: dict[str, list[str]] = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts and len(edges) == len(verts)


def halin_from_plane_tree(t: PlaneTree) -> HalinInput:
    """Close the plane tree into a Halin graph: connect its leaves in rotation
    (DFS) order and root the result at the first leaf."""
    for v in t.preorder:
        if t.tree_degree(v) == 2:
            raise GraphError(f"vertex {v!r} has degree two in the tree")
    leaves = t.leaves
    if len(leaves) < 3:
        raise GraphError("a Halin graph needs at least 3 tree leaves")
    verts = t.preorder
    tree_pairs = [(v, c) for v in verts for c in t.child_list(v)]
    cycle_pairs = [(leaves[i], leaves[(i + 1) % len(leaves)]) for i in range(len(leaves))]
    g = Graph(verts, tuple(tree_pairs + cycle_pairs))
    h = HalinInput(
        g,
        g.canon_edges(tree_pairs),
        g.canon_edges(cycle_pairs),
        leaves[0],
    )
    h.validate()
    return h


def random_halin(internal_count: int, seed: int) -> PlaneTree:
    """Random plane tree suitable for Halin closure: no degree-2 vertices,
    deterministic for a fixed seed.  ``internal_count`` clamps to >= 1."""
    internal_count = max(1, internal_count)
    rng = random.Random(seed)
    counter = [0]

    def fresh(prefix: str) -> str:
        counter[0] += 1
        return f"{prefix}{counter[0]}"

    root = fresh("n")
    children: dict[str, list[str]] = {root: []}
    # queue of internal vertices still to expand; budget counts internals
    budget = internal_count - 1
    expand = [root]
    while expand:
        v = expand.pop(0)
        if v == root:
            n_children = 3 if internal_count == 1 else rng.randint(3, 5)
        else:
            n_children = rng.randint(2, 4)
        for _ in range(n_children):
            c = fresh("n")
            children[v].append(c)
            children[c] = []
        if budget > 0:
            # promote a random subset of the new children to internal
            promote = rng.randint(1, min(budget, n_children))
            picks = rng.sample(children[v], promote)
            for c in sorted(picks, key=children[v].index):
                expand.append(c)
            budget -= promote
    return PlaneTree(root, {v: tuple(cs) for v, cs in children.items()})


def random_kcycle(k: int, branching: int, seed: int) -> KCycleInput:
    """Random k-cycle tree: full-depth plane tree from a center, each level
    closed into a cycle in rotation order.  Deterministic for a fixed seed."""
    k = max(1, k)
    branching = max(1, branching)
    rng = random.Random(seed)
    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"v{counter[0]}"

    center = "c"
    children: dict[str, list[str]] = {center: []}
    levels: list[list[str]] = [[center]]
    for depth in range(1, k + 1):
        layer: list[str] = []
        for v in levels[depth - 1]:
            n = rng.randint(3, max(3, branching + 2)) if v == center else rng.randint(1, branching)
            for _ in range(n):
                c = fresh()
                children[v].append(c)
                children[c] = []
                layer.append(c)
        levels.append(layer)
    # rotation order per level = DFS order of the plane tree restricted to that depth;
    # by construction each layer list already follows parent rotation order
    verts = [center]
    stack = list(reversed(children[center]))
    while stack:
        v = stack.pop()
        verts.append(v)
        stack.extend(reversed(children[v]))
    tree_pairs = [(v, c) for v in verts for c in children[v]]
    cycle_levels: list[list[tuple[str, str]]] = []
    for depth in range(1, k + 1):
        ring = levels[depth]
        cycle_levels.append([(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))])
    g = Graph(tuple(verts), tuple(tree_pairs + [e for ec in cycle_levels for e in ec]))
    # root = DFS-first depth-k leaf; level roots = its ancestors
    parent = {c: v for v in children for c in children[v]}
    root = levels[k][0]
    chain = [root]
    while chain[-1] != center:
        chain.append(parent[chain[-1]])
    chain.reverse()  # center .. root
    level_roots = tuple(chain[1:k])  # r_1 .. r_{k-1}
    kc = KCycleInput(
        g,
        center,
        g.canon_edges(tree_pairs),
        tuple(g.canon_edges(ec) for ec in cycle_levels),
        level_roots,
        root,
    )
    kc.validate()
    return kc


def _tree_dist(kc: KCycleInput, a: str, b: str) -> int:
    adj: dict[str, list[str]] = {v: [] for v in kc.graph.vertices}
    for u, v in kc.tree_edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = {a: 0}
    frontier = [a]
    while frontier:
        nxt = []
        for u in frontier:
            if u == b:
                return dist[u]
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist.get(b, -1)


HALIN4_JSON = (
    '{"vertices":["a","b","c","v"],"edges":[["v","a"],["v","b"],["v","c"],'
    '["a","b"],["b","c"],["c","a"]]}'
)


def halin4() -> HalinInput:
    """The smallest Halin graph (K4 drawn as a star plus its leaf triangle)."""
    return halin_from_plane_tree(PlaneTree("v", {"v": ("a", "b", "c")}))
