import itertools
import json
from fractions import Fraction

import pytest

from arbcover.cli import (
    EXIT_INFEASIBLE,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_RESOURCE,
    check_instance,
    format_instance,
    generate_instance,
    main,
    parse_instance,
    run_solve,
)
from arbcover.errors import ParseError
from arbcover.oracle import enumerate_arborescences

I1_DOC = {
    "nodes": ["r", "a", "b"],
    "arcs": [
        {"id": "e0", "tail": "r", "head": "a"},
        {"id": "e1", "tail": "r", "head": "b"},
        {"id": "e2", "tail": "a", "head": "b"},
        {"id": "e3", "tail": "b", "head": "a"},
    ],
    "laminar": [["r", "a", "b"], ["a", "b"]],
    "problem": "tight-blocker",
}

I5_DOC = {
    "nodes": ["r", "a", "b"],
    "arcs": [
        {"id": "ra", "tail": "r", "head": "a", "cost": 1},
        {"id": "rb", "tail": "r", "head": "b", "cost": 5},
        {"id": "ab", "tail": "a", "head": "b", "cost": 1},
        {"id": "ba", "tail": "b", "head": "a", "cost": 1},
    ],
    "root": "r",
    "problem": "min-arb",
}


def write(tmp_path, doc, name="inst.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_minimal_document():
    inst = parse_instance('{"nodes": ["x"], "arcs": []}')
    assert inst.nodes == ["x"] and inst.arcs == [] and inst.problem == "blocker"


def test_defaults():
    inst = parse_instance(json.dumps(I1_DOC))
    assert all(a.cost == 0 and a.weight == 1 for a in inst.arcs)


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"nodes": ["a"], "arcs": [{"id": "x", "tail": "a", "head": "z"}]}, "arcs[0].head"),
        ({"nodes": ["a", "b", "c"], "laminar": [["a", "b"], ["b", "c"]]}, "laminar"),
        ({"nodes": ["a"], "arcs": [{"id": "x", "tail": "a", "head": "a"}]}, "arcs[0]"),
        ({"nodes": ["a", "b"], "arcs": [{"id": "x", "tail": "a", "head": "b", "weight": -1}]},
         "arcs[0].weight"),
        ({"nodes": ["a", "a"]}, "nodes"),
        ({"nodes": ["a"], "problem": "nope"}, "problem"),
        ({"nodes": ["a"], "root": "q"}, "root"),
    ],
)
def test_parse_errors(doc, field):
    with pytest.raises(ParseError) as info:
        parse_instance(json.dumps(doc))
    assert info.value.field == field


def test_json_syntax_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse_instance('{\n"nodes": ["a"],\n"arcs": [,]\n}')
    assert info.value.line == 3


def test_round_trip():
    for seed in range(20):
        inst = generate_instance(seed, 5, 9, 4, 3, "tight-blocker")
        assert parse_instance(format_instance(inst)) == inst
    inst = parse_instance(json.dumps(
        {"nodes": ["a", "b"], "arcs": [{"id": "x", "tail": "a", "head": "b", "weight": "3/2"}]}))
    assert inst.arcs[0].weight == Fraction(3, 2)
    assert parse_instance(format_instance(inst)) == inst


def test_gen_is_reproducible(capsys):
    assert main(["gen", "--seed", "7", "--nodes", "5", "--arcs", "9"]) == EXIT_OK
    first = capsys.readouterr().out
    main(["gen", "--seed", "7", "--nodes", "5", "--arcs", "9"])
    assert capsys.readouterr().out == first
    main(["gen", "--seed", "8", "--nodes", "5", "--arcs", "9"])
    assert capsys.readouterr().out != first


def test_solve_tight_blocker_I1(tmp_path, capsys):
    assert main(["solve", "--input", write(tmp_path, I1_DOC)]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["optimum"] == 2
    assert set(out) >= {"optimum", "arcs", "certificate", "runtime_ms", "mincut_calls"}
    assert set(out["certificate"]) == {"F", "Z1", "Z2"}


def test_solve_min_arb_I5(tmp_path, capsys):
    assert main(["solve", "--input", write(tmp_path, I5_DOC)]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["optimum"] == 2 and out["arcs"] == ["ra", "ab"]


def test_solve_blocker_I5_text(tmp_path, capsys):
    path = write(tmp_path, I5_DOC)
    assert main(["solve", "--input", path, "--problem", "blocker", "--output", "text"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "optimum: 1" in text and "arcs: ra" in text


def test_global_min_arb(tmp_path, capsys):
    doc = dict(I5_DOC)
    doc.pop("root")
    assert main(["solve", "--input", write(tmp_path, doc), "--global"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["optimum"] == 2 and len(out["arcs"]) == 2


def global_blocker_value(D, c, w):
    trees = [B for _, B in enumerate_arborescences(D)]
    cost = [sum(c[a] for a in B) for B in trees]
    optimal = [B for B, x in zip(trees, cost) if x == min(cost)]
    for k in range(D.m + 1):
        best = [
            sum(w[a] for a in H)
            for H in itertools.combinations(D.arc_ids, k)
            if all(B & set(H) for B in optimal)
        ]
        if best:
            yield min(best)


def test_global_blocker_matches_enumeration():
    for seed in range(30):
        inst = generate_instance(seed, 4, 7, 3, 3, "blocker")
        D, c, w = inst.digraph(), inst.costs(), inst.weights()
        expected = min(global_blocker_value(D, c, w))
        report = run_solve(inst, use_global=True)
        assert report.optimum == expected
        assert sum(w[a] for a in report.arcs) == expected


def test_exit_codes(tmp_path, capsys):
    assert main(["solve", "--input", write(tmp_path, "{bad json")]) == EXIT_PARSE
    no_root = dict(I5_DOC, root="b", arcs=I5_DOC["arcs"][:3])
    no_root["arcs"] = [{"id": "ra", "tail": "r", "head": "a"}]
    assert main(["solve", "--input", write(tmp_path, no_root)]) == EXIT_INFEASIBLE
    single = {"nodes": ["x"], "problem": "tight-blocker"}
    assert main(["solve", "--input", write(tmp_path, single)]) == EXIT_INFEASIBLE
    big = generate_instance(1, 9, 20, problem="tight-blocker")
    assert main(["oracle", "--input", write(tmp_path, format_instance(big))]) == EXIT_RESOURCE
    missing_root = dict(I5_DOC)
    missing_root.pop("root")
    assert main(["solve", "--input", write(tmp_path, missing_root)]) == EXIT_PARSE
    capsys.readouterr()


def test_check_detects_mismatch(monkeypatch, tmp_path, capsys):
    import arbcover.cli as cli

    real = cli.run_solve

    def wrong(inst, use_global=False):
        rep = real(inst, use_global)
        rep.optimum = rep.optimum + 1
        return rep

    monkeypatch.setattr(cli, "run_solve", wrong)
    assert main(["check", "--input", write(tmp_path, I1_DOC)]) == EXIT_MISMATCH
    capsys.readouterr()


@pytest.mark.parametrize("problem", ["tight-blocker", "blocker", "min-arb"])
def test_check_on_generated_instances(problem, capsys):
    count = 200 if problem == "tight-blocker" else 60
    code = main(["check", "--count", str(count), "--seed", "500", "--nodes", "5", "--arcs", "9",
                 "--max-weight", "4", "--problem", problem])
    summary = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK and summary == {"instances": count, "mismatches": 0}


def test_check_instance_reports_agreement():
    inst = parse_instance(json.dumps(I1_DOC))
    ok, got, want = check_instance(inst)
    assert ok and got.optimum == want.optimum == 2
