"""Tree decompositions: typed, anchored bags in a rooted (optionally
ordered) tree, the three-axiom validator, normalization passes and terminal
subgraph extraction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import TerminalGraph
from .graphs import Edge, Graph, GraphError
from .orientation import Coloring

# Builder bag types: R1 R2 R3 L1 L2 L3 LR; generic vertex/edge types V / E;
# LeafPad for the singleton padding pass.


@dataclass(frozen=True)
class Anchor:
    kind: str  # "vertex" | "edge"
    vertex: Optional[str] = None
    edge: Optional[Edge] = None

    def __post_init__(self) -> None:
        if self.kind == "vertex":
            if self.vertex is None or self.edge is not None:
                raise GraphError("vertex anchor needs exactly a vertex")
        elif self.kind == "edge":
            if self.edge is None or self.vertex is not None:
                raise GraphError("edge anchor needs exactly an edge")
            object.__setattr__(self, "edge", (self.edge[0], self.edge[1]))
        else:
            raise GraphError(f"unknown anchor kind {self.kind!r}")

    @staticmethod
    def at_vertex(v: str) -> "Anchor":
        return Anchor("vertex", vertex=v)

    @staticmethod
    def at_edge(e: Edge) -> "Anchor":
        return Anchor("edge", edge=e)

    def to_json_dict(self) -> dict:
        if self.kind == "vertex":
            return {"vertex": self.vertex}
        return {"edge": list(self.edge)}


@dataclass(frozen=True)
class Bag:
    id: int
    vertices: frozenset[str]
    type: str
    anchor: Anchor

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, Bag]
    root: int
    parent: Mapping[int, int]
    order: Optional[Mapping[int, tuple[int, ...]]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "bags", dict(self.bags))
        object.__setattr__(self, "parent", dict(self.parent))
        if self.order is not None:
            object.__setattr__(
                self, "order", {p: tuple(cs) for p, cs in self.order.items()}
            )

    def children(self, b: int) -> tuple[int, ...]:
        if self.order is not None:
            return self.order.get(b, ())
        return tuple(sorted(c for c, p in self.parent.items() if p == b))

    @property
    def is_ordered(self) -> bool:
        return self.order is not None

    def postorder(self) -> list[int]:
        out: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            b, done = stack.pop()
            if done:
                out.append(b)
            else:
                stack.append((b, True))
                for c in reversed(self.children(b)):
                    stack.append((c, False))
        return out

    def descendants(self, b: int) -> list[int]:
        """b and all bags below it, preorder."""
        out = []
        stack = [b]
        while stack:
            cur = stack.pop()
            out.append(cur)
            stack.extend(reversed(self.children(cur)))
        return out

    def max_child_count(self) -> int:
        return max((len(self.children(b)) for b in self.bags), default=0)


def validate(g: Graph, td: TreeDecomposition) -> list[dict]:
    """Axiom report: empty list iff td is a valid tree decomposition of g.
    Each entry names the violated condition and a witness."""
    report: list[dict] = []
    if td.root not in td.bags:
        return [{"axiom": "structure", "witness": "root bag missing"}]
    # parent map must form a tree on the bag ids, rooted at root
    reach = set(td.postorder())
    if reach != set(td.bags):
        report.append(
            {"axiom": "structure", "witness": sorted(set(td.bags) - reach)}
        )
        return report
    for c, p in td.parent.items():
        if c == td.root or p not in td.bags:
            report.append({"axiom": "structure", "witness": (c, p)})
    if td.order is not None:
        for p, cs in td.order.items():
            if sorted(cs) != sorted(c for c, q in td.parent.items() if q == p):
                report.append({"axiom": "structure", "witness": ("order", p)})
    covered = set()
    for b in td.bags.values():
        for v in b.vertices:
            if v not in g.index:
                report.append({"axiom": "structure", "witness": ("foreign", v, b.id)})
        covered |= b.vertices
    for v in g.vertices:
        if v not in covered:
            report.append({"axiom": "vertex-coverage", "witness": v})
    for e in g.edges:
        if not any(e[0] in b.vertices and e[1] in b.vertices for b in td.bags.values()):
            report.append({"axiom": "edge-coverage", "witness": e})
    # per-vertex bag connectivity
    for v in g.vertices:
        holding = [b.id for b in td.bags.values() if v in b.vertices]
        if len(holding) <= 1:
            continue
        hs = set(holding)
        seen = {holding[0]}
        stack = [holding[0]]
        while stack:
            cur = stack.pop()
            nbrs = list(td.children(cur))
            if cur in td.parent:
                nbrs.append(td.parent[cur])
            for n in nbrs:
                if n in hs and n not in seen:
                    seen.add(n)
                    stack.append(n)
        if seen != hs:
            report.append({"axiom": "bag-connectivity", "witness": (v, sorted(hs - seen))})
    return report


def width(td: TreeDecomposition) -> int:
    if not td.bags:
        raise GraphError("empty decomposition has no width")
    return max(len(b.vertices) for b in td.bags.values()) - 1


def classify(td: TreeDecomposition, b: int) -> str:
    n = len(td.children(b))
    return "Leaf" if n == 0 else "Intermediate" if n == 1 else "Branch"


def contract_equal_bags(td: TreeDecomposition) -> TreeDecomposition:
    """Merge every child into its parent while their vertex sets coincide.
    The parent's type and anchor survive.  Idempotent."""
    bags = dict(td.bags)
    parent = dict(td.parent)
    order = {p: list(cs) for p, cs in td.order.items()} if td.order is not None else None

    def kids(b: int) -> list[int]:
        if order is not None:
            return order.get(b, [])
        return [c for c, p in parent.items() if p == b]

    changed = True
    while changed:
        changed = False
        for c in list(parent):
            p = parent[c]
            if bags[c].vertices != bags[p].vertices:
                continue
            grandkids = kids(c)
            for gk in grandkids:
                parent[gk] = p
            if order is not None:
                pos = order[p].index(c)
                order[p] = order[p][:pos] + list(grandkids) + order[p][pos + 1 :]
                order.pop(c, None)
            del parent[c]
            del bags[c]
            changed = True
            break
    return TreeDecomposition(
        bags,
        td.root,
        parent,
        {p: tuple(cs) for p, cs in order.items()} if order is not None else None,
    )


def pad_leaves(td: TreeDecomposition, col: Coloring) -> TreeDecomposition:
    """Give every non-singleton leaf bag a child holding only its lowest
    colored vertex; anchors and width are preserved."""
    bags = dict(td.bags)
    parent = dict(td.parent)
    order = {p: list(cs) for p, cs in td.order.items()} if td.order is not None else None
    next_id = max(bags) + 1
    for b in list(td.bags.values()):
        if td.children(b.id) or len(b.vertices) <= 1:
            continue
        low = min(b.vertices, key=lambda v: col[v])
        nb = Bag(next_id, frozenset({low}), "LeafPad", b.anchor)
        bags[next_id] = nb
        parent[next_id] = b.id
        if order is not None:
            order[b.id] = [next_id]
        next_id += 1
    return TreeDecomposition(
        bags,
        td.root,
        parent,
        {p: tuple(cs) for p, cs in order.items()} if order is not None else None,
    )


def terminal_subgraph(g: Graph, td: TreeDecomposition, b: int) -> TerminalGraph:
    """Induced subgraph on the bag and everything below it, boundary = the
    bag in vertex declaration order."""
    verts: set[str] = set()
    for d in td.descendants(b):
        verts |= td.bags[d].vertices
    sub = g.induced(verts)
    return TerminalGraph(sub, tuple(g.sort_vertices(td.bags[b].vertices)))


def partial_terminal_subgraph(
    g: Graph, td: TreeDecomposition, b: int, child: int
) -> TerminalGraph:
    """Induced subgraph on the bag plus the subtrees of the child's strictly
    left siblings; boundary = the bag."""
    if td.order is None:
        raise GraphError("partial terminal subgraphs need an ordered decomposition")
    sibs = td.children(b)
    if child not in sibs:
        raise GraphError(f"bag {child} is not a child of {b}")
    verts: set[str] = set(td.bags[b].vertices)
    for s in sibs[: sibs.index(child)]:
        for d in td.descendants(s):
            verts |= td.bags[d].vertices
    sub = g.induced(verts)
    return TerminalGraph(sub, tuple(g.sort_vertices(td.bags[b].vertices)))


def to_json_dict(g: Graph, td: TreeDecomposition) -> dict:
    doc = {
        "bags": [
            {
                "id": b.id,
                "vertices": g.sort_vertices(b.vertices),
                "type": b.type,
                "anchor": b.anchor.to_json_dict(),
            }
            for b in sorted(td.bags.values(), key=lambda b: b.id)
        ],
        "root": td.root,
        "parent": {str(c): p for c, p in sorted(td.parent.items())},
    }
    if td.order is not None:
        doc["order"] = {str(p): list(cs) for p, cs in sorted(td.order.items())}
    return doc


def from_json_dict(doc: dict) -> TreeDecomposition:
    try:
        bags = {}
        for bd in doc["bags"]:
            a = bd["anchor"]
            anchor = (
                Anchor.at_vertex(a["vertex"])
                if "vertex" in a
                else Anchor.at_edge(tuple(a["edge"]))
            )
            bags[bd["id"]] = Bag(bd["id"], frozenset(bd["vertices"]), bd["type"], anchor)
        parent = {int(c): p for c, p in doc["parent"].items()}
        order = None
        if "order" in doc:
            order = {int(p): tuple(cs) for p, cs in doc["order"].items()}
        return TreeDecomposition(bags, doc["root"], parent, order)
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed decomposition document: {exc}") from exc


def to_dot(g: Graph, td: TreeDecomposition) -> str:
    lines = ["digraph td {", "  node [shape=box];"]
    for b in sorted(td.bags.values(), key=lambda b: b.id):
        label = "{" + ",".join(g.sort_vertices(b.vertices)) + "}\\n" + b.type
        lines.append(f'  b{b.id} [label="{label}"];')
    for p in sorted(td.bags):
        for c in td.children(p):
            lines.append(f"  b{p} -> b{c};")
    lines.append("}")
    return "\n".join(lines)
