import json

import pytest
from click.testing import CliRunner

from msotd.cli import main
from msotd.graphs import halin4


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, args, stdin=None):
    result = runner.invoke(main, args, input=stdin, catch_exceptions=False)
    return result


def _json_out(result):
    return json.loads(result.output.strip().splitlines()[-1])


def test_gen_halin_is_deterministic(runner):
    a = _run(runner, ["gen-halin", "--internal", "3", "--seed", "5"])
    b = _run(runner, ["gen-halin", "--internal", "3", "--seed", "5"])
    assert a.exit_code == 0 and a.output == b.output
    doc = _json_out(a)
    assert {"vertices", "edges", "tree_edges", "cycle_edges", "root"} <= set(doc)


def test_gen_halin_rejects_bad_internal(runner):
    result = _run(runner, ["gen-halin", "--internal", "0"])
    assert result.exit_code == 2


def test_halin_pipeline_verify(runner):
    inst = _run(runner, ["gen-halin", "--internal", "4", "--seed", "1"]).output
    env = _run(runner, ["decompose", "--method", "halin"], stdin=inst)
    assert env.exit_code == 0
    verdict = _run(runner, ["verify-td"], stdin=env.output)
    assert verdict.exit_code == 0
    doc = _json_out(verdict)
    assert doc["valid"] is True and doc["width"] <= 3


def test_kcycle_pipeline_verify(runner):
    inst = _run(runner, ["gen-kcycle", "--k", "2", "--seed", "3"]).output
    env = _run(runner, ["decompose", "--method", "kcycle"], stdin=inst)
    verdict = _run(runner, ["verify-td"], stdin=env.output)
    doc = _json_out(verdict)
    assert doc["valid"] is True and doc["width"] <= 8


def test_remember_pipeline_verify(runner):
    graph = _run(runner, ["gen-outerplanar", "--k", "2", "--n", "10", "--seed", "2"]).output
    env = _run(runner, ["decompose", "--method", "remember"], stdin=graph)
    assert env.exit_code == 0
    assert "tree_edges" in _json_out(env)
    verdict = _run(runner, ["verify-td"], stdin=env.output)
    assert _json_out(verdict)["valid"] is True


def test_verify_rejects_tampered_envelope(runner):
    inst = _run(runner, ["gen-halin", "--internal", "2", "--seed", "1"]).output
    env = _json_out(_run(runner, ["decompose", "--method", "halin"], stdin=inst))
    victim = next(
        b for b in env["decomposition"]["bags"] if len(b["vertices"]) > 1
    )
    victim["vertices"] = victim["vertices"][:1]
    result = _run(runner, ["verify-td"], stdin=json.dumps(env))
    assert result.exit_code == 1
    doc = _json_out(result)
    assert doc["valid"] is False and doc["kind"] == "invalid-decomposition"
    assert doc["violations"]


def test_decide_k4_not_bipartite(runner):
    inst = json.dumps(halin4().to_json_dict())
    result = _run(runner, ["decide", "--property", "bipartite"], stdin=inst)
    assert result.exit_code == 1
    doc = _json_out(result)
    assert doc["result"] is False and doc["kind"] == "property-false"


def test_decide_k4_hamiltonian(runner):
    inst = json.dumps(halin4().to_json_dict())
    result = _run(runner, ["decide", "--property", "hamiltonian"], stdin=inst)
    assert result.exit_code == 0
    assert _json_out(result)["result"] is True


def test_mso_eval_fundcyc(runner):
    inst = json.dumps(halin4().to_json_dict())
    result = _run(
        runner,
        ["mso-eval", "--predicate", "fundcyc", "--args", "e=v-a,f=a-b"],
        stdin=inst,
    )
    assert result.exit_code == 0
    assert _json_out(result)["result"] is True


def test_mso_eval_orinb_asymmetric(runner):
    inst = json.dumps(halin4().to_json_dict())
    fwd = _run(
        runner,
        ["mso-eval", "--predicate", "orinb", "--args", "e=v-c,f=v-b"],
        stdin=inst,
    )
    bwd = _run(
        runner,
        ["mso-eval", "--predicate", "orinb", "--args", "e=v-b,f=v-c"],
        stdin=inst,
    )
    assert _json_out(fwd)["result"] is True
    assert _json_out(bwd)["result"] is False


def test_mso_eval_formula_file(runner, tmp_path):
    formula = tmp_path / "f.sexpr"
    formula.write_text("(forall-v x (exists-e e (inc e x)))")
    inst = json.dumps(halin4().to_json_dict())
    result = _run(
        runner, ["mso-eval", "--formula", str(formula)], stdin=inst
    )
    assert result.exit_code == 0
    assert _json_out(result)["result"] is True


def test_mso_eval_usage_errors(runner):
    inst = json.dumps(halin4().to_json_dict())
    both = _run(
        runner,
        ["mso-eval", "--predicate", "fundcyc", "--args", "e=v-a"],
        stdin=inst,
    )
    assert both.exit_code == 2
    unknown = _run(runner, ["mso-eval", "--predicate", "nope"], stdin=inst)
    assert unknown.exit_code == 2


def test_augment_edges_roundtrip(runner):
    graph = _run(runner, ["gen-outerplanar", "--k", "1", "--n", "8", "--seed", "4"]).output
    env = _json_out(_run(runner, ["decompose", "--method", "remember"], stdin=graph))
    verts = [v for v in env["graph"]["vertices"]]
    present = {frozenset(e) for e in env["graph"]["edges"]}
    chord = next(
        [u, v]
        for i, u in enumerate(verts)
        for v in verts[i + 1 :]
        if frozenset((u, v)) not in present
    )
    env["extra_edges"] = [chord]
    out = _run(runner, ["augment", "--edges", "--bound", "2"], stdin=json.dumps(env))
    assert out.exit_code == 0
    verdict = _run(runner, ["verify-td"], stdin=out.output)
    assert _json_out(verdict)["valid"] is True


def test_export_dot(runner):
    inst = _run(runner, ["gen-halin", "--internal", "2", "--seed", "0"]).output
    env = _run(runner, ["decompose", "--method", "halin"], stdin=inst)
    raw = _run(runner, ["export-dot", "--raw"], stdin=env.output)
    assert raw.exit_code == 0 and raw.output.lstrip().startswith("digraph")
    wrapped = _run(runner, ["export-dot"], stdin=env.output)
    assert "dot" in _json_out(wrapped)
