import itertools
import random

import pytest

from conftest import random_connected_graph
from msotd.graphs import Graph, halin4
from msotd.mso import (
    BudgetError, Evaluator, ParseError, Structure, check_budget, evaluate,
    halin_structure, kcycle_structure, naive_eval, parse_formula,
)
from msotd.mso import predicates as P
from msotd.mso.crosscheck import all_ok, run_halin_crosschecks, wheel_kcycle
from msotd.mso.formula import IncV, SetName


def _plain_structure(g: Graph) -> Structure:
    elems = {"cv1": g.vertices[0]}
    if g.edges:
        elems["ce1"] = g.edges[0]
    return Structure(
        g, elems, {"V": frozenset(g.vertices), "E": frozenset(g.edges)}
    )


# ---------------------------------------------------------------------------
# random differential testing against the reference evaluator

_LEAF_TEMPLATES = [
    "(eq {v1} {v2})",
    "(inc {e1} {v1})",
    "(in {v1} {V1})",
    "(in {e1} {E1})",
    "(subseteq {V1} {V2})",
    "(conn {V1} {E1})",
    "(cycle {V1} {E1})",
    "(tree {V1} {E1})",
    "(path-between {v1} {v2} {E1})",
    "(card<= {V1} 2)",
    "(deg>= {v1} {E1} 1)",
    "(in {v1} (incv {E1}))",
    "(in {e1} (ince {V1}))",
]


def _random_formula(rng: random.Random, depth: int, vvars, evars, Vvars, Evars) -> str:
    if depth == 0 or rng.random() < 0.3:
        t = rng.choice(_LEAF_TEMPLATES)
        pick = lambda pool, fallback: rng.choice(pool) if pool else fallback
        return t.format(
            v1=pick(vvars, "cv1"),
            v2=pick(vvars, "cv1"),
            e1=pick(evars, "ce1"),
            V1=pick(Vvars, "V"),
            V2=pick(Vvars, "V"),
            E1=pick(Evars, "E"),
        )
    roll = rng.random()
    if roll < 0.25:
        sub = _random_formula(rng, depth - 1, vvars, evars, Vvars, Evars)
        return f"(not {sub})"
    if roll < 0.5:
        op = rng.choice(("and", "or", "implies", "iff"))
        a = _random_formula(rng, depth - 1, vvars, evars, Vvars, Evars)
        b = _random_formula(rng, depth - 1, vvars, evars, Vvars, Evars)
        return f"({op} {a} {b})"
    q = rng.choice(("exists", "forall"))
    kind = rng.choice(("v", "e", "vs", "es"))
    name = f"q{rng.randrange(10 ** 6)}"
    pools = {
        "v": (vvars + [name], evars, Vvars, Evars),
        "e": (vvars, evars + [name], Vvars, Evars),
        "vs": (vvars, evars, Vvars + [name], Evars),
        "es": (vvars, evars, Vvars, Evars + [name]),
    }[kind]
    sub = _random_formula(rng, depth - 1, *pools)
    return f"({q}-{kind} {name} {sub})"


def test_differential_random_closed_formulas():
    rng = random.Random(99)
    mismatches = []
    for trial in range(100):
        g = random_connected_graph(rng, rng.randint(2, 4), rng.randint(0, 2))
        s = _plain_structure(g)
        text = _random_formula(rng, rng.randint(1, 3), [], [], ["V"], ["E"])
        f = parse_formula(text)
        if evaluate(s, f) != naive_eval(s, f):
            mismatches.append(text)
    assert not mismatches, mismatches


def test_partition_counts_assignments():
    g = Graph(("a", "b", "c"), (("a", "b"),))
    s = _plain_structure(g)
    f = P.part_v(SetName("V"), [SetName("X1"), SetName("X2")])
    subsets = [
        frozenset(c)
        for r in range(4)
        for c in itertools.combinations(g.vertices, r)
    ]
    count = sum(
        evaluate(s, f, {"X1": x1, "X2": x2})
        for x1 in subsets
        for x2 in subsets
    )
    assert count == 2 ** 3


# ---------------------------------------------------------------------------
# parser errors and evaluator guards


def test_parse_errors():
    for bad in ["", "(", "(and", "(bogus x)", "(eq a)", "(in x)", "x y"]:
        with pytest.raises(ParseError):
            parse_formula(bad)


def test_unbound_variable_rejected():
    g = Graph(("a",), ())
    from msotd.mso.formula import MsoError

    with pytest.raises(MsoError):
        evaluate(_plain_structure(g), parse_formula("(eq x x)"))


def test_budget_rejects_expensive_formula_on_large_structure():
    h = None
    from conftest import make_halin

    for seed in range(30):
        cand = make_halin(6, seed)
        if len(cand.graph.vertices) >= 13:
            h = cand
            break
    assert h is not None
    s = halin_structure(h)
    f = P.orinb("e", "f", 3)
    with pytest.raises(BudgetError):
        check_budget(s, f)
    with pytest.raises(BudgetError):
        evaluate(s, f, {"e": h.graph.edges[0], "f": h.graph.edges[1]})


def test_budget_admits_fixture_scale():
    s = halin_structure(halin4())
    check_budget(s, P.orinb("e", "f", 3))


# ---------------------------------------------------------------------------
# the predicate library evaluates on the two reference structures


def _halin_predicate_suite(k):
    yield P.dir_tree(P.ALL_V, P.ET, k)
    yield P.dir_cycle(IncV(P.EC), P.EC, k)
    yield P.fund_cycle_ee("e", "f")
    yield P.orinb("e", "f", k)
    yield P.orinba("e", "f", k)
    yield P.bd_r("x", "w", k)
    yield P.bd_l("x", "w", k)
    for tau in P.HALIN_BAG_TYPES:
        yield P.bag_halin(tau, "e", "X", k)
    yield P.bag_any("X", k)
    yield P.parent_halin("Xp", "Xc", k)


def test_library_within_budget_on_reference_structures():
    s_h = halin_structure(halin4())
    for f in _halin_predicate_suite(3):
        check_budget(s_h, f)
    kc = wheel_kcycle(3)
    s_k = kcycle_structure(kc)
    kcycle_suite = [
        P.kcycle_orientation_sentence(1, 4),
        P.bag_kcycle("R1", "e", "X", 1, 1, 4),
        P.orinb_level("e", "f", 1, 1, 4),
    ]
    for f in kcycle_suite:
        check_budget(s_k, f)


def test_memoizing_and_reference_evaluators_agree_on_predicates():
    h = halin4()
    s = halin_structure(h)
    g = h.graph
    f = P.fund_cycle_ee("e", "f")
    ev = Evaluator(s)
    for e in g.edges:
        for fe in g.edges:
            env = dict(s.base_env(), e=e, f=fe)
            assert ev.eval(f, env) == naive_eval(s, f, {"e": e, "f": fe})


def test_halin_crosschecks_smoke():
    report = run_halin_crosschecks()
    assert all_ok(report), report
