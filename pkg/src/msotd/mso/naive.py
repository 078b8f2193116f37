"""Independent reference semantics for the formula language.

Deliberately written in a different style from the main evaluator (no
caching, no budget, recursion via a single dispatch table) so the two can
be tested differentially against each other.
"""

from __future__ import annotations

from itertools import chain, combinations

from .formula import (
    And, CardCmp, Conn, Conn2, DegCmp, Eq, Iff, Implies, In, Inc, IncE, IncV,
    IsCycle, IsPath, IsTree, MsoError, Not, Or, PathBetween, Quant, SetName,
    SetOp, SetQuant, Structure, SubsetEq,
)


def _tval(s: Structure, t, env):
    if isinstance(t, SetName):
        return frozenset(env[t.name])
    if isinstance(t, SetOp):
        a, b = _tval(s, t.a, env), _tval(s, t.b, env)
        return {"union": a | b, "inter": a & b, "minus": a - b}[t.op]
    if isinstance(t, IncV):
        return frozenset(chain.from_iterable(_tval(s, t.edges, env)))
    if isinstance(t, IncE):
        vs = _tval(s, t.vertices, env)
        return frozenset(e for e in s.graph.edges if set(e) <= vs)
    raise MsoError(f"bad term {t!r}")


def _powerset(xs):
    xs = sorted(xs)
    return (
        frozenset(c) for r in range(len(xs) + 1) for c in combinations(xs, r)
    )


def _nconn(vs, es):
    vs = set(vs)
    if not vs:
        return True
    comp = {v: v for v in vs}

    def find(v):
        while comp[v] != v:
            v = comp[v]
        return v

    for a, b in es:
        if a in vs and b in vs:
            comp[find(a)] = find(b)
    return len({find(v) for v in vs}) == 1


def naive_eval(s: Structure, f, env=None) -> bool:
    env = dict(s.base_env(), **(env or {}))

    def degree(v, es):
        return sum(v in e for e in es)

    def ev(f, env):
        if isinstance(f, Eq):
            return env[f.a] == env[f.b]
        if isinstance(f, Inc):
            return env[f.v] in env[f.e]
        if isinstance(f, In):
            return env[f.x] in _tval(s, f.s, env)
        if isinstance(f, SubsetEq):
            return _tval(s, f.a, env) <= _tval(s, f.b, env)
        if isinstance(f, Not):
            return not ev(f.f, env)
        if isinstance(f, And):
            return all(ev(g, env) for g in f.fs)
        if isinstance(f, Or):
            return any(ev(g, env) for g in f.fs)
        if isinstance(f, Implies):
            return ev(f.b, env) if ev(f.a, env) else True
        if isinstance(f, Iff):
            return ev(f.a, env) is ev(f.b, env)
        if isinstance(f, Quant):
            vals = [ev(f.body, {**env, f.var: x}) for x in s.domain(f.sort)]
            return any(vals) if f.kind == "exists" else all(vals)
        if isinstance(f, SetQuant):
            base = (
                _tval(s, f.bound, env) if f.bound is not None else s.domain(f.sort)
            )
            vals = (ev(f.body, {**env, f.var: ss}) for ss in _powerset(base))
            return any(vals) if f.kind == "exists" else all(vals)
        if isinstance(f, Conn):
            return _nconn(_tval(s, f.vertices, env), _tval(s, f.edges, env))
        if isinstance(f, Conn2):
            vs = _tval(s, f.vertices, env)
            es = _tval(s, f.edges, env)
            if len(vs) <= 2:
                return _nconn(vs, es)
            return _nconn(vs, es) and all(
                _nconn(vs - {v}, [e for e in es if v not in e]) for v in vs
            )
        if isinstance(f, IsCycle):
            vs = _tval(s, f.vertices, env)
            es = _tval(s, f.edges, env)
            return (
                len(vs) >= 3
                and len(es) == len(vs)
                and all(set(e) <= vs for e in es)
                and all(degree(v, es) == 2 for v in vs)
                and _nconn(vs, es)
            )
        if isinstance(f, IsTree):
            vs = _tval(s, f.vertices, env)
            es = _tval(s, f.edges, env)
            return (
                all(set(e) <= vs for e in es)
                and len(es) == max(len(vs) - 1, 0)
                and _nconn(vs, es)
            )
        if isinstance(f, IsPath):
            vs = _tval(s, f.vertices, env)
            es = _tval(s, f.edges, env)
            return (
                len(es) == max(len(vs) - 1, 0)
                and _nconn(vs, es)
                and max((degree(v, es) for v in vs), default=0) <= 2
            )
        if isinstance(f, PathBetween):
            es = _tval(s, f.edges, env)
            a, b = env[f.s], env[f.t]
            if not es:
                return a == b
            vs = frozenset(chain.from_iterable(es))
            return (
                a != b
                and a in vs
                and b in vs
                and len(es) == len(vs) - 1
                and _nconn(vs, es)
                and degree(a, es) == 1
                and degree(b, es) == 1
                and max(degree(v, es) for v in vs) <= 2
            )
        if isinstance(f, CardCmp):
            n = len(_tval(s, f.s, env))
            return n == f.k if f.op == "eq" else n <= f.k if f.op == "le" else n >= f.k
        if isinstance(f, DegCmp):
            d = degree(env[f.v], _tval(s, f.edges, env))
            return d == f.k if f.op == "eq" else d <= f.k if f.op == "le" else d >= f.k
        raise MsoError(f"bad formula {f!r}")

    return ev(f, env)
