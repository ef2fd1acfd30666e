import json

import pytest

from gentle.cli import main


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, data_dir):
    assert run(capsys, "validate", data_dir / "kronecker.gp")[0] == 0
    code, out, _ = run(capsys, "validate", data_dir / "bad.gp")
    assert code == 2 and "admissibility" in out


def test_invariant_json(capsys, data_dir):
    code, out, _ = run(capsys, "invariant", data_dir / "kronecker.gp", "--json")
    assert code == 0
    assert json.loads(out) == {"genus": 0, "components": [{"marked": 1, "winding": 0}, {"marked": 1, "winding": 0}]}


def test_equiv(capsys, data_dir):
    code, out, _ = run(capsys, "equiv", data_dir / "a3_linear.gp", data_dir / "a3_zigzag.gp")
    assert code == 0 and out.splitlines()[0] == "Equivalent"
    code, out, _ = run(capsys, "equiv", data_dir / "a2.gp", data_dir / "dual_numbers.gp")
    assert out.splitlines()[0] == "NotEquivalent"


def test_surface_outputs(capsys, data_dir):
    code, out, _ = run(capsys, "surface", data_dir / "kronecker.gp", "--json")
    d = json.loads(out)
    assert d["chi"] == 0 and d["punctures"] == 0
    code, out, _ = run(capsys, "surface", data_dir / "a2.gp", "--dot")
    assert code == 0 and out.startswith("graph")


def test_word_commands(capsys, data_dir):
    k = data_dir / "kronecker.gp"
    code, out, _ = run(capsys, "hom", k, "arc: x @ (b, 0) .. (a, 0)", "band(1): y -[b,>]- x -[a,<]-", "--json")
    assert code == 0 and json.loads(out)["profile"] == {"1": 1}
    code, out, _ = run(capsys, "cone", k, "arc: x -[a,<]- y -[b,>]- x @ (b, 0) .. (a, 0)", "band(1): y -[b,>]- x -[a,<]-", "--json")
    assert code == 0 and all(c["agrees"] for c in json.loads(out)["crossings"])
    code, out, _ = run(capsys, "complex", k, "band(2): y -[b,>]- x -[a,<]-", "--json")
    assert code == 0 and json.loads(out)["kind"] == "band(2)"
    code, out, _ = run(capsys, "tau", data_dir / "a3_linear.gp", "arc: 1 @ (a.b, 0) .. (e_1, 0)", "--power", 4, "--json")
    assert code == 0 and json.loads(out)["grades"] == [2]
    code, out, _ = run(capsys, "twist", k, "band(1): y -[b,>]- x -[a,<]-", "arc: x @ (b, 0) .. (a, 0)")
    assert code == 0


def test_endo(capsys, data_dir, tmp_path):
    code, out, _ = run(capsys, "endo", data_dir / "a3_relation.gp")
    assert code == 0 and "rel" in out
    arcs = tmp_path / "arcs.txt"
    arcs.write_text("arc: x @ (a, 0) .. (b, 0)\n")
    code, _, err = run(capsys, "endo", data_dir / "kronecker.gp", arcs)
    assert code == 2 and "generation" in err


def test_corpus(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "--count", 3, "--seed", 5, "--json")
    assert code == 0 and len(json.loads(out)) == 3
    assert run(capsys, "corpus", "--count", 3, "--out", tmp_path)[0] == 0
    assert len(list(tmp_path.glob("*.gp"))) == 3


@pytest.mark.parametrize(
    "args",
    [["validate", "{d}/missing.gp"], ["complex", "{d}/kronecker.gp", "arc: q @ (b, 0) .. (a, 0)"], ["twist", "{d}/kronecker.gp", "arc: x @ (b, 0) .. (a, 0)", "arc: x @ (b, 0) .. (a, 0)"]],
)
def test_invalid_input_exits_2(capsys, data_dir, args):
    assert run(capsys, *[a.format(d=data_dir) for a in args])[0] == 2


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nosuch"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["hom", "x.gp"])
    assert e.value.code == 1
