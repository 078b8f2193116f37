"""Command-line surface: generators, decomposition builders, validators,
property automata and the formula evaluator, all JSON-in/JSON-out.

Exit codes: 0 success, 1 property-false or invalid decomposition (JSON
carries a ``kind`` field), 2 usage error, 3 evaluation budget exceeded.
"""

from __future__ import annotations

import json
import sys

import click

from . import decomposition as D
from .automata import ALL_PROPERTIES, run_automaton
from .feedback import augment_edges, augment_vertices, extend_graph
from .graphs import (
    Graph, GraphError, HalinInput, KCycleInput, halin_from_plane_tree,
    parse_graph, random_halin, random_kcycle,
)
from .halin_td import build_halin_td
from .kcycle_td import build_kcycle_td
from .mso import predicates as P
from .mso.formula import BudgetError, MsoError, evaluate
from .mso.sexpr import parse_formula
from .mso.structures import halin_structure, kcycle_structure
from .orientation import ColoringError, proper_coloring
from .remember_td import build_remember_td, find_spanning_tree, random_layered


def _emit(doc: dict, code: int = 0) -> None:
    click.echo(json.dumps(doc, sort_keys=True))
    if code:
        sys.exit(code)


def _read_doc(input_file) -> dict:
    text = input_file.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise click.UsageError("input JSON must be an object")
    return doc


def _graph_of(doc: dict) -> Graph:
    try:
        return parse_graph(json.dumps(doc))
    except GraphError as exc:
        raise click.UsageError(str(exc)) from exc


def _instance_of(doc: dict):
    """Halin or cycle-tree instance, inferred from the document shape."""
    try:
        if "cycle_edges_by_level" in doc:
            return KCycleInput.from_json_dict(doc)
        if "cycle_edges" in doc:
            return HalinInput.from_json_dict(doc)
    except GraphError as exc:
        raise click.UsageError(str(exc)) from exc
    raise click.UsageError(
        "expected a Halin (cycle_edges) or cycle-tree (cycle_edges_by_level) document"
    )


def _envelope(g: Graph, td: D.TreeDecomposition) -> dict:
    return {"graph": g.to_json_dict(), "decomposition": D.to_json_dict(g, td)}


def _read_envelope(doc: dict) -> tuple[Graph, D.TreeDecomposition]:
    if "decomposition" not in doc:
        raise click.UsageError("expected an envelope with graph and decomposition")
    g = _graph_of(doc.get("graph", doc))
    try:
        td = D.from_json_dict(doc["decomposition"])
    except GraphError as exc:
        raise click.UsageError(str(exc)) from exc
    return g, td


_input_option = click.option(
    "--input", "input_file", type=click.File("r"), default="-",
    help="Input JSON file (default: stdin).",
)


@click.group()
def main() -> None:
    """Tree decompositions, gluing automata and formula evaluation."""


@main.command("gen-halin")
@click.option("--internal", type=int, required=True, help="Internal tree vertex count.")
@click.option("--seed", type=int, default=0, show_default=True)
def gen_halin(internal: int, seed: int) -> None:
    """Random Halin instance (planted plane tree plus leaf cycle)."""
    if internal < 1:
        raise click.UsageError("--internal must be at least 1")
    h = halin_from_plane_tree(random_halin(internal, seed))
    _emit(h.to_json_dict())


@main.command("gen-kcycle")
@click.option("--k", "k", type=int, required=True, help="Number of cycle levels.")
@click.option("--branching", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def gen_kcycle(k: int, branching: int, seed: int) -> None:
    """Random k-level cycle tree."""
    if k < 1 or branching < 1:
        raise click.UsageError("--k and --branching must be at least 1")
    _emit(random_kcycle(k, branching, seed).to_json_dict())


@main.command("gen-outerplanar")
@click.option("--k", "k", type=int, default=2, show_default=True, help="Nesting depth.")
@click.option("--delta", type=int, default=4, show_default=True, help="Degree cap.")
@click.option("--n", "n", type=int, default=12, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def gen_outerplanar(k: int, delta: int, n: int, seed: int) -> None:
    """Bounded-degree layered instance (nested cycles plus radial chords)."""
    _emit(random_layered(k, delta, n, seed).to_json_dict())


@main.command("decompose")
@click.option(
    "--method", type=click.Choice(["halin", "kcycle", "remember"]), required=True
)
@click.option("--kappa", type=int, default=None, help="Vertex remember bound.")
@click.option("--lam", type=int, default=None, help="Edge remember bound.")
@click.option("--seed", type=int, default=0, show_default=True)
@_input_option
def decompose(method: str, kappa, lam, seed: int, input_file) -> None:
    """Build a tree decomposition for the instance on stdin."""
    doc = _read_doc(input_file)
    if method == "halin":
        inst = _instance_of(doc)
        if not isinstance(inst, HalinInput):
            raise click.UsageError("halin method needs a Halin document")
        _emit(_envelope(inst.graph, build_halin_td(inst)))
    elif method == "kcycle":
        inst = _instance_of(doc)
        if not isinstance(inst, KCycleInput):
            raise click.UsageError("kcycle method needs a cycle-tree document")
        _emit(_envelope(inst.graph, build_kcycle_td(inst)))
    else:
        g = _graph_of(doc)
        if not g.is_connected():
            raise click.UsageError("remember method needs a connected graph")
        kap = kappa if kappa is not None else len(g.vertices)
        lm = lam if lam is not None else len(g.edges)
        tree = find_spanning_tree(g, kap, lm, seed)
        if tree is None:
            _emit({"kind": "no-spanning-tree", "kappa": kap, "lam": lm}, code=1)
        col = proper_coloring(g, g.max_degree())
        td = build_remember_td(g, tree, col)
        out = _envelope(g, td)
        out["tree_edges"] = sorted([list(e) for e in tree])
        _emit(out)


@main.command("augment")
@click.option("--edges", "mode", flag_value="edges")
@click.option("--vertices", "mode", flag_value="vertices")
@click.option("--bound", "l", type=int, required=True, help="Feedback bound l.")
@_input_option
def augment(mode, l: int, input_file) -> None:
    """Extend a decomposition envelope by extra chords or apex vertices.

    The envelope must carry ``tree_edges`` plus either ``extra_edges`` or
    ``new_vertices``/``new_edges``.
    """
    if mode is None:
        raise click.UsageError("pass one of --edges / --vertices")
    doc = _read_doc(input_file)
    g, td = _read_envelope(doc)
    if "tree_edges" not in doc:
        raise click.UsageError("envelope must carry tree_edges")
    tree = frozenset(g.canon(*e) for e in doc["tree_edges"])
    try:
        if mode == "edges":
            extra = frozenset(tuple(e) for e in doc.get("extra_edges", []))
            if not extra:
                raise click.UsageError("--edges needs extra_edges in the envelope")
            ext = extend_graph(g, frozenset(), frozenset(extra))
            col = proper_coloring(ext, ext.max_degree())
            td2 = augment_edges(ext, td, tree, frozenset(ext.canon(*e) for e in extra), col, l)
            out = _envelope(ext, td2)
        else:
            new_vs = frozenset(doc.get("new_vertices", []))
            new_es = frozenset(tuple(e) for e in doc.get("new_edges", []))
            if not new_vs:
                raise click.UsageError("--vertices needs new_vertices in the envelope")
            td2 = augment_vertices(g, td, tree, new_vs, new_es, l)
            out = _envelope(extend_graph(g, new_vs, new_es), td2)
    except (GraphError, ColoringError) as exc:
        _emit({"kind": "augment-failed", "error": str(exc)}, code=1)
        return
    out["tree_edges"] = sorted([list(e) for e in tree])
    _emit(out)


@main.command("verify-td")
@_input_option
def verify_td(input_file) -> None:
    """Check the three decomposition axioms and report the width."""
    g, td = _read_envelope(_read_doc(input_file))
    violations = D.validate(g, td)
    doc = {"valid": not violations, "width": D.width(td), "violations": violations}
    if violations:
        doc["kind"] = "invalid-decomposition"
        _emit(doc, code=1)
    _emit(doc)


_PROPERTY_ALIASES = {
    "parity": "parity2",
    "hamiltonian": "hamiltonian_cycle",
}


@main.command("decide")
@click.option("--property", "prop", required=True,
              type=click.Choice(sorted(set(ALL_PROPERTIES) | set(_PROPERTY_ALIASES))))
@_input_option
def decide(prop: str, input_file) -> None:
    """Run the bottom-up automaton for a property over a decomposition.

    Accepts a Halin/cycle-tree instance (decomposed on the fly) or a
    graph+decomposition envelope.
    """
    doc = _read_doc(input_file)
    if "decomposition" in doc:
        g, td = _read_envelope(doc)
    else:
        inst = _instance_of(doc)
        g = inst.graph
        td = (
            build_halin_td(inst)
            if isinstance(inst, HalinInput)
            else build_kcycle_td(inst)
        )
    spec = ALL_PROPERTIES[_PROPERTY_ALIASES.get(prop, prop)]()
    result = run_automaton(g, td, spec)
    doc_out = {"property": prop, "result": result}
    if not result:
        doc_out["kind"] = "property-false"
        _emit(doc_out, code=1)
    _emit(doc_out)


# predicate registry: name -> (argument sorts, builder taking k)
def _bag_builder(tau):
    return lambda k: P.bag_halin(tau, "e", "X", k, guarded=True)


_PREDICATES = {
    "dir_tree": ((), lambda k: P.dir_tree(P.ALL_V, P.ET, k)),
    "dir_cycle": ((), lambda k: P.dir_cycle(P.IncV(P.EC), P.EC, k)),
    "fundcyc": ((("e", "edge"), ("f", "edge")), lambda k: P.fund_cycle_ee("e", "f")),
    "fundcyc_v": ((("v", "vertex"), ("f", "edge")), lambda k: P.fund_cycle_ve("v", "f")),
    "orinb": ((("e", "edge"), ("f", "edge")), lambda k: P.orinb("e", "f", k)),
    "orinba": ((("e", "edge"), ("f", "edge")), lambda k: P.orinba("e", "f", k)),
    "orisib": ((("x", "vertex"), ("y", "vertex")), lambda k: P.orisib("x", "y", k)),
    "orisiba": ((("x", "vertex"), ("y", "vertex")), lambda k: P.orisiba("x", "y", k)),
    "child_rplus": ((("x", "vertex"),), lambda k: P.child_rplus("x", k)),
    "child_lplus": ((("x", "vertex"),), lambda k: P.child_lplus("x", k)),
    "bd_r": ((("x", "vertex"), ("w", "vertex")), lambda k: P.bd_r("x", "w", k)),
    "bd_l": ((("x", "vertex"), ("w", "vertex")), lambda k: P.bd_l("x", "w", k)),
    "bag": ((("X", "vset"),), lambda k: P.bag_any("X", k)),
    "parent": ((("Xp", "vset"), ("Xc", "vset")), lambda k: P.parent_halin("Xp", "Xc", k)),
    **{
        f"bag_{tau.lower()}": ((("e", "edge"), ("X", "vset")), _bag_builder(tau))
        for tau in P.HALIN_BAG_TYPES
    },
}


def _parse_arg(g: Graph, value: str, sort: str):
    if sort == "vertex":
        if value not in g.index:
            raise click.UsageError(f"unknown vertex {value!r}")
        return value
    if sort == "vset":
        parts = [p for p in value.split("+") if p]
        for p in parts:
            if p not in g.index:
                raise click.UsageError(f"unknown vertex {p!r}")
        return frozenset(parts)
    # edge: "u-v", or two single-character vertex names run together
    if "-" in value:
        u, _, v = value.partition("-")
    elif len(value) == 2 and value[0] in g.index and value[1] in g.index:
        u, v = value[0], value[1]
    else:
        raise click.UsageError(f"cannot parse edge argument {value!r}")
    if not g.has_edge(u, v):
        raise click.UsageError(f"no edge between {u!r} and {v!r}")
    return g.canon(u, v)


@main.command("mso-eval")
@click.option("--predicate", default=None, help="Library predicate name.")
@click.option("--formula", "formula_file", type=click.File("r"), default=None,
              help="S-expression formula file.")
@click.option("--args", "args_text", default="", help="name=value,... arguments.")
@_input_option
def mso_eval(predicate, formula_file, args_text: str, input_file) -> None:
    """Evaluate a library predicate or an S-expression formula over the
    structure of a Halin or cycle-tree instance."""
    if (predicate is None) == (formula_file is None):
        raise click.UsageError("pass exactly one of --predicate / --formula")
    inst = _instance_of(_read_doc(input_file))
    if isinstance(inst, HalinInput):
        s, k = halin_structure(inst), 3
    else:
        s, k = kcycle_structure(inst), 4
    g = inst.graph
    raw = dict(
        part.split("=", 1) for part in args_text.split(",") if part
    ) if args_text else {}
    env = {}
    if predicate is not None:
        if predicate not in _PREDICATES:
            raise click.UsageError(
                f"unknown predicate {predicate!r}; known: {', '.join(sorted(_PREDICATES))}"
            )
        spec, builder = _PREDICATES[predicate]
        for name, sort in spec:
            if name not in raw:
                raise click.UsageError(f"predicate {predicate} needs argument {name}")
            env[name] = _parse_arg(g, raw.pop(name), sort)
        if raw:
            raise click.UsageError(f"unexpected arguments: {', '.join(sorted(raw))}")
        form = builder(k)
    else:
        try:
            form = parse_formula(formula_file.read())
        except MsoError as exc:
            raise click.UsageError(str(exc)) from exc
        for name, value in raw.items():
            env[name] = (
                _parse_arg(g, value, "vertex")
                if value in g.index
                else _parse_arg(g, value, "edge")
            )
    try:
        result = evaluate(s, form, env)
    except BudgetError as exc:
        _emit({"kind": "budget", "error": str(exc)}, code=3)
        return
    except MsoError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit({"result": result})


@main.command("export-dot")
@click.option("--raw", is_flag=True, help="Print bare DOT instead of JSON.")
@_input_option
def export_dot(raw: bool, input_file) -> None:
    """Render a graph+decomposition envelope as GraphViz DOT."""
    g, td = _read_envelope(_read_doc(input_file))
    dot = D.to_dot(g, td)
    if raw:
        click.echo(dot)
    else:
        _emit({"dot": dot})


if __name__ == "__main__":
    main()
