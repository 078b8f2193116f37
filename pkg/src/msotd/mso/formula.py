"""Second-order formulas over finite graph structures.

Two element sorts (vertices, edges) and set variables of either sort.
Atoms: equality, incidence, membership, set inclusion.  A handful of
classic graph predicates (connectivity, cycle/tree/path shape, degree and
cardinality comparisons) are built-in primitives; everything else in the
predicate library is spelled out as a formula.  Evaluation is exhaustive
with memoization on free-variable assignments and a cost guard that
rejects formulas whose set-quantifier enumeration would explode.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Union

from ..graphs import Edge, Graph

COST_CAP = 2 ** 26


class MsoError(Exception):
    pass


class BudgetError(MsoError):
    pass


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class Structure:
    """A graph with named element and set constants."""

    graph: Graph
    elems: Mapping[str, object]
    sets: Mapping[str, frozenset]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elems", dict(self.elems))
        object.__setattr__(self, "sets", dict(self.sets))

    def domain(self, sort: str) -> tuple:
        if sort == "vertex":
            return self.graph.vertices
        if sort == "edge":
            return self.graph.edges
        raise MsoError(f"unknown sort {sort!r}")

    def base_env(self) -> dict:
        env = dict(self.elems)
        env.update(self.sets)
        return env


# ---------------------------------------------------------------------------
# set terms


@dataclass(frozen=True)
class SetName:
    name: str


@dataclass(frozen=True)
class SetOp:
    op: str  # "union" | "inter" | "minus"
    a: "SetTerm"
    b: "SetTerm"


@dataclass(frozen=True)
class IncV:
    """Vertices incident to an edge set."""

    edges: "SetTerm"


@dataclass(frozen=True)
class IncE:
    """Edges with both endpoints inside a vertex set."""

    vertices: "SetTerm"


SetTerm = Union[SetName, SetOp, IncV, IncE]


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Eq:
    a: str
    b: str


@dataclass(frozen=True)
class Inc:
    e: str
    v: str


@dataclass(frozen=True)
class In:
    x: str
    s: SetTerm


@dataclass(frozen=True)
class SubsetEq:
    a: SetTerm
    b: SetTerm


@dataclass(frozen=True)
class Not:
    f: "Formula"


@dataclass(frozen=True)
class And:
    fs: tuple

    def __init__(self, *fs: "Formula") -> None:
        object.__setattr__(self, "fs", tuple(fs))


@dataclass(frozen=True)
class Or:
    fs: tuple

    def __init__(self, *fs: "Formula") -> None:
        object.__setattr__(self, "fs", tuple(fs))


@dataclass(frozen=True)
class Implies:
    a: "Formula"
    b: "Formula"


@dataclass(frozen=True)
class Iff:
    a: "Formula"
    b: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str  # "exists" | "forall"
    var: str
    sort: str  # "vertex" | "edge"
    body: "Formula"


@dataclass(frozen=True)
class SetQuant:
    kind: str
    var: str
    sort: str
    body: "Formula"
    bound: Optional[SetTerm] = None  # subsets of this set; full domain if None


# built-in primitives (all well-known MSO-definable graph predicates)


@dataclass(frozen=True)
class Conn:
    vertices: SetTerm
    edges: SetTerm


@dataclass(frozen=True)
class Conn2:
    """Biconnected (2-vertex-connected, or a single edge/vertex)."""

    vertices: SetTerm
    edges: SetTerm


@dataclass(frozen=True)
class IsCycle:
    vertices: SetTerm
    edges: SetTerm


@dataclass(frozen=True)
class IsTree:
    vertices: SetTerm
    edges: SetTerm


@dataclass(frozen=True)
class IsPath:
    vertices: SetTerm
    edges: SetTerm


@dataclass(frozen=True)
class PathBetween:
    """The edge set forms a simple s-t path; empty set means s = t."""

    s: str
    t: str
    edges: SetTerm


@dataclass(frozen=True)
class CardCmp:
    s: SetTerm
    op: str  # "eq" | "le" | "ge"
    k: int


@dataclass(frozen=True)
class DegCmp:
    v: str
    edges: SetTerm
    op: str
    k: int


Formula = Union[
    Eq, Inc, In, SubsetEq, Not, And, Or, Implies, Iff, Quant, SetQuant,
    Conn, Conn2, IsCycle, IsTree, IsPath, PathBetween, CardCmp, DegCmp,
]


# ---------------------------------------------------------------------------
# free variables


def _term_vars(t: SetTerm) -> frozenset:
    if isinstance(t, SetName):
        return frozenset({t.name})
    if isinstance(t, SetOp):
        return _term_vars(t.a) | _term_vars(t.b)
    if isinstance(t, IncV):
        return _term_vars(t.edges)
    if isinstance(t, IncE):
        return _term_vars(t.vertices)
    raise MsoError(f"unknown set term {t!r}")


@lru_cache(maxsize=None)
def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Eq):
        return frozenset({f.a, f.b})
    if isinstance(f, Inc):
        return frozenset({f.e, f.v})
    if isinstance(f, In):
        return frozenset({f.x}) | _term_vars(f.s)
    if isinstance(f, SubsetEq):
        return _term_vars(f.a) | _term_vars(f.b)
    if isinstance(f, Not):
        return free_vars(f.f)
    if isinstance(f, (And, Or)):
        out = frozenset()
        for g in f.fs:
            out |= free_vars(g)
        return out
    if isinstance(f, (Implies, Iff)):
        return free_vars(f.a) | free_vars(f.b)
    if isinstance(f, Quant):
        return free_vars(f.body) - {f.var}
    if isinstance(f, SetQuant):
        out = free_vars(f.body) - {f.var}
        if f.bound is not None:
            out |= _term_vars(f.bound)
        return out
    if isinstance(f, (Conn, Conn2, IsCycle, IsTree, IsPath)):
        return _term_vars(f.vertices) | _term_vars(f.edges)
    if isinstance(f, PathBetween):
        return frozenset({f.s, f.t}) | _term_vars(f.edges)
    if isinstance(f, CardCmp):
        return _term_vars(f.s)
    if isinstance(f, DegCmp):
        return frozenset({f.v}) | _term_vars(f.edges)
    raise MsoError(f"unknown formula node {f!r}")


# ---------------------------------------------------------------------------
# cost guard.  The evaluator memoizes on free-variable assignments, so the
# realistic cost is, per subformula, the number of distinct assignments of
# its quantifier-bound free variables; the guard sums these over all nodes.


def _cost(s: Structure, f: Formula, domains: dict, total: list) -> None:
    nv, ne = len(s.graph.vertices), len(s.graph.edges)
    node = 1
    for v in free_vars(f):
        node *= domains.get(v, 1)
        if node > COST_CAP:
            break
    total[0] += node
    if isinstance(f, Not):
        _cost(s, f.f, domains, total)
    elif isinstance(f, (And, Or)):
        for g in f.fs:
            _cost(s, g, domains, total)
    elif isinstance(f, (Implies, Iff)):
        _cost(s, f.a, domains, total)
        _cost(s, f.b, domains, total)
    elif isinstance(f, Quant):
        n = max(nv if f.sort == "vertex" else ne, 1)
        _cost(s, f.body, {**domains, f.var: n}, total)
    elif isinstance(f, SetQuant):
        if f.bound is not None and isinstance(f.bound, SetName):
            base = len(
                s.sets.get(f.bound.name, s.domain(f.sort))
            )
        else:
            base = nv if f.sort == "vertex" else ne
        n = 2 ** min(base, 40)
        _cost(s, f.body, {**domains, f.var: n}, total)


def check_budget(s: Structure, f: Formula) -> None:
    total = [0]
    _cost(s, f, {}, total)
    if total[0] > COST_CAP:
        raise BudgetError("estimated evaluation cost exceeds the 2^26 budget")


# ---------------------------------------------------------------------------
# evaluation


_ATOMIC = (Eq, Inc, In, SubsetEq, CardCmp, DegCmp)


class Evaluator:
    def __init__(self, s: Structure) -> None:
        self.s = s
        self.cache: dict = {}
        self._fv_sorted: dict = {}

    def set_value(self, t: SetTerm, env: dict) -> frozenset:
        if isinstance(t, SetName):
            if t.name in env:
                return frozenset(env[t.name])
            raise MsoError(f"unbound set variable {t.name!r}")
        if isinstance(t, SetOp):
            a, b = self.set_value(t.a, env), self.set_value(t.b, env)
            if t.op == "union":
                return a | b
            if t.op == "inter":
                return a & b
            if t.op == "minus":
                return a - b
            raise MsoError(f"unknown set operation {t.op!r}")
        if isinstance(t, IncV):
            return frozenset(v for e in self.set_value(t.edges, env) for v in e)
        if isinstance(t, IncE):
            vs = self.set_value(t.vertices, env)
            return frozenset(
                e for e in self.s.graph.edges if e[0] in vs and e[1] in vs
            )
        raise MsoError(f"unknown set term {t!r}")

    def elem(self, name: str, env: dict):
        if name in env:
            return env[name]
        raise MsoError(f"unbound variable {name!r}")

    def eval(self, f: Formula, env: dict) -> bool:
        if isinstance(f, _ATOMIC):
            return self._eval(f, env)
        fid = id(f)
        fv = self._fv_sorted.get(fid)
        if fv is None:
            fv = self._fv_sorted[fid] = tuple(sorted(free_vars(f)))
        key = (fid, tuple(env.get(v) for v in fv))
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        out = self._eval(f, env)
        self.cache[key] = out
        return out

    def _eval(self, f: Formula, env: dict) -> bool:
        g = self.s.graph
        if isinstance(f, Eq):
            return self.elem(f.a, env) == self.elem(f.b, env)
        if isinstance(f, Inc):
            e = self.elem(f.e, env)
            return self.elem(f.v, env) in e
        if isinstance(f, In):
            return self.elem(f.x, env) in self.set_value(f.s, env)
        if isinstance(f, SubsetEq):
            return self.set_value(f.a, env) <= self.set_value(f.b, env)
        if isinstance(f, Not):
            return not self.eval(f.f, env)
        if isinstance(f, And):
            return all(self.eval(x, env) for x in f.fs)
        if isinstance(f, Or):
            return any(self.eval(x, env) for x in f.fs)
        if isinstance(f, Implies):
            return (not self.eval(f.a, env)) or self.eval(f.b, env)
        if isinstance(f, Iff):
            return self.eval(f.a, env) == self.eval(f.b, env)
        if isinstance(f, Quant):
            dom = self.s.domain(f.sort)
            if f.kind == "exists":
                return any(self.eval(f.body, {**env, f.var: x}) for x in dom)
            return all(self.eval(f.body, {**env, f.var: x}) for x in dom)
        if isinstance(f, SetQuant):
            if f.bound is not None:
                base = sorted(self.set_value(f.bound, env))
            else:
                base = list(self.s.domain(f.sort))
            subsets = _subsets(tuple(base))
            if f.kind == "exists":
                return any(self.eval(f.body, {**env, f.var: ss}) for ss in subsets)
            return all(self.eval(f.body, {**env, f.var: ss}) for ss in subsets)
        if isinstance(f, Conn):
            return _connected(self.set_value(f.vertices, env), self.set_value(f.edges, env))
        if isinstance(f, Conn2):
            return _biconnected(self.set_value(f.vertices, env), self.set_value(f.edges, env))
        if isinstance(f, IsCycle):
            vs, es = self.set_value(f.vertices, env), self.set_value(f.edges, env)
            return (
                len(vs) >= 3
                and len(es) == len(vs)
                and _connected(vs, es)
                and all(_deg(v, es) == 2 for v in vs)
                and all(v in vs for e in es for v in e)
            )
        if isinstance(f, IsTree):
            vs, es = self.set_value(f.vertices, env), self.set_value(f.edges, env)
            return (
                len(es) == max(len(vs) - 1, 0)
                and _connected(vs, es)
                and all(v in vs for e in es for v in e)
            )
        if isinstance(f, IsPath):
            vs, es = self.set_value(f.vertices, env), self.set_value(f.edges, env)
            if not _connected(vs, es) or len(es) != max(len(vs) - 1, 0):
                return False
            return all(_deg(v, es) <= 2 for v in vs)
        if isinstance(f, PathBetween):
            s_, t_ = self.elem(f.s, env), self.elem(f.t, env)
            es = self.set_value(f.edges, env)
            return _is_path_between(s_, t_, es)
        if isinstance(f, CardCmp):
            n = len(self.set_value(f.s, env))
            return {"eq": n == f.k, "le": n <= f.k, "ge": n >= f.k}[f.op]
        if isinstance(f, DegCmp):
            d = _deg(self.elem(f.v, env), self.set_value(f.edges, env))
            return {"eq": d == f.k, "le": d <= f.k, "ge": d >= f.k}[f.op]
        raise MsoError(f"unknown formula node {f!r}")


@lru_cache(maxsize=4096)
def _subsets(base: tuple) -> tuple:
    out = [frozenset()]
    for x in base:
        out.extend([s | {x} for s in out])
    return tuple(out)


def _deg(v, es: frozenset) -> int:
    return sum(1 for e in es if v in e)


def _connected(vs: frozenset, es: frozenset) -> bool:
    if not vs:
        return True
    adj: dict = {v: [] for v in vs}
    for a, b in es:
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def _biconnected(vs: frozenset, es: frozenset) -> bool:
    if len(vs) <= 2:
        return _connected(vs, es)
    return _connected(vs, es) and all(
        _connected(vs - {v}, frozenset(e for e in es if v not in e)) for v in vs
    )


def _is_path_between(s, t, es: frozenset) -> bool:
    if not es:
        return s == t
    vs = frozenset(v for e in es for v in e)
    if s not in vs or t not in vs:
        return False
    if not _connected(vs, es) or len(es) != len(vs) - 1:
        return False
    degs = {v: _deg(v, es) for v in vs}
    if any(d > 2 for d in degs.values()):
        return False
    if s == t:
        return False
    return degs[s] == 1 and degs[t] == 1


def evaluate(s: Structure, f: Formula, env: Optional[dict] = None) -> bool:
    """Exhaustive evaluation under the structure's constants plus ``env``."""
    check_budget(s, f)
    full = s.base_env()
    if env:
        full.update(env)
    missing = [v for v in free_vars(f) if v not in full]
    if missing:
        raise MsoError(f"unbound variables: {sorted(missing)}")
    return Evaluator(s).eval(f, full)
