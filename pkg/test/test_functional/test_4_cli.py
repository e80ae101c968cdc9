import json
import os

import pytest
from click.testing import CliRunner

from linmba.cli import cli
from linmba.expr import Width, parse
from linmba.tools.dataset import read_dataset
from linmba.verify import equivalent_linear

W64 = Width(64)

@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()

@pytest.fixture
def dataset(tmpdir):
    """A small generated dataset of x^y obfuscations."""
    path = str(tmpdir.join("xor.csv"))
    result = CliRunner().invoke(cli, ["generate", "--target", "x^y", "--terms", "5", "--count", "4", "--seed", "3",
                                      "--out", path])
    assert result.exit_code == 0, result.output
    return path

def test_simplify_expression(runner):
    result = runner.invoke(cli, ["simplify", "3735936685*(x^y)+49374"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "49374+3735936685*(x^y)"

def test_simplify_json(runner):
    result = runner.invoke(cli, ["simplify", "--json", "3735936685*(x^y)+49374"])
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["output"] == "49374+3735936685*(x^y)"
    assert document["signature"] == [49374, 3735986059, 3735986059, 49374]
    assert document["basis"] == "49374+3735936685*x+3735936685*y-7471873370*(x&y)"
    assert document["refinement_case"] == 4
    assert document["variables"] == ["x", "y"]
    assert document["linear_checked"] is True
    assert document["check"] is None

def test_simplify_check(runner):
    result = runner.invoke(cli, ["simplify", "--check", "(x^y)+2*(x&y)"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["x+y", "# ProvenLinear"]

def test_simplify_bits(runner):
    result = runner.invoke(cli, ["simplify", "--bits", "8", "255*x"])
    assert result.output.strip() == "-x"

def test_simplify_nonlinear(runner):
    result = runner.invoke(cli, ["simplify", "x*y"])
    assert result.exit_code == 1
    assert "Not a linear MBA" in result.output
    assert "(path /)" in result.output

def test_simplify_nonlinear_allowed(runner):
    result = runner.invoke(cli, ["simplify", "--allow-nonlinear", "x*y"])
    assert result.exit_code == 0
    assert "x&y" in result.output.splitlines()
    assert "0/1 points only" in result.output

def test_simplify_syntax_error(runner):
    result = runner.invoke(cli, ["simplify", "x+"])
    assert result.exit_code == 1
    assert "position 2" in result.output

@pytest.mark.parametrize("args", [["simplify"], ["simplify", "x", "--dataset", __file__]])
def test_simplify_usage(runner, args):
    assert runner.invoke(cli, args).exit_code == 2

def test_simplify_dataset(runner, dataset):
    result = runner.invoke(cli, ["simplify", "--dataset", dataset, "--workers", "1"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[:4] == ["x^y"] * 4
    assert "Total: 4" in lines
    assert "Solved (exact): 4" in lines

def test_simplify_dataset_json(runner, dataset):
    result = runner.invoke(cli, ["simplify", "--dataset", dataset, "--json", "--workers", "2", "--check"])
    assert result.exit_code == 0, result.output
    document = json.loads(result.output)
    assert (document["total"], document["solved_exact"], document["failed"]) == (4, 4, 0)

def test_simplify_dataset_with_failures(runner, tmpdir):
    path = tmpdir.join("mixed.csv")
    path.write("# complex,simple\nx+y,x+y\nx*y,x&y\n(x|y)-(x&y),x&y\n")
    result = runner.invoke(cli, ["simplify", "--dataset", str(path), "--workers", "1"])
    assert result.exit_code == 1
    assert "Failed: 2" in result.output
    assert "line 3:" in result.output

def test_simplify_malformed_dataset(runner, tmpdir):
    path = tmpdir.join("bad.csv")
    path.write("x+y\n")
    result = runner.invoke(cli, ["simplify", "--dataset", str(path)])
    assert result.exit_code == 1
    assert "Line 1" in result.output

def test_generate(runner, tmpdir):
    path = str(tmpdir.join("sum.csv"))
    result = runner.invoke(cli, ["generate", "--target", "x+y", "--terms", "4", "--count", "5", "--seed", "7",
                                 "--out", path])
    assert result.exit_code == 0
    assert "Generated 5 record(s) for x+y." in result.output
    records = read_dataset(path)
    assert len(records) == 5
    for record in records:
        assert record.simple == "x+y"
        assert equivalent_linear(parse(record.complex, W64), parse("x+y", W64), W64).equivalent

def test_generate_is_deterministic(runner, tmpdir):
    paths = [str(tmpdir.join("a.csv")), str(tmpdir.join("b.csv"))]
    for path, workers in zip(paths, ["1", "2"]):
        args = ["generate", "--target", "3735936685*~x", "--vars", "y", "--count", "3", "--out", path,
                "--workers", workers]
        assert runner.invoke(cli, args).exit_code == 0
    with open(paths[0]) as a, open(paths[1]) as b:
        assert a.read() == b.read()

def test_generate_to_stdout(runner):
    result = runner.invoke(cli, ["generate", "--target", "x", "--vars", "y,z", "--count", "2", "--bits", "16"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[:2] == ["# complex,simple", "# width 16"]
    assert lines[2].endswith(",x")

def test_generate_empty(runner, tmpdir):
    path = str(tmpdir.join("empty.csv"))
    result = runner.invoke(cli, ["generate", "--target", "x+y", "--count", "0", "--out", path])
    assert result.exit_code == 0
    assert read_dataset(path) == []
    with open(path) as fh:
        assert fh.read() == "# complex,simple\n"

def test_generate_encoded(runner, tmpdir):
    path = str(tmpdir.join("encoded.csv"))
    args = ["generate", "--target", "x+y", "--count", "4", "--encode-affine", "random", "--out", path]
    assert runner.invoke(cli, args).exit_code == 0
    assert len({record.simple for record in read_dataset(path)}) == 1
    result = runner.invoke(cli, ["simplify", "--dataset", path, "--json", "--workers", "1"])
    assert json.loads(result.output)["solved_exact"] == 4

@pytest.mark.parametrize("args", [
    ["--target", "x*y"],
    ["--target", "x+"],
    ["--target", "x", "--terms", "1"],
    ["--target", "x", "--encode-affine", "2,1"],
    ["--target", "x", "--encode-affine", "three"],
    ["--target", "x", "--vars", "1a"],
])
def test_generate_usage_errors(runner, args):
    assert runner.invoke(cli, ["generate"] + args).exit_code == 2

def test_verify_pair(runner):
    result = runner.invoke(cli, ["verify", "--bits", "32", "3735936685*(x^y)+49374",
                                 "3735911998*~x-24687*(x|~y)-3735936685*(y|~x)+3735911998*(y|x)"])
    assert result.exit_code == 0
    assert result.output.strip() == "ProvenLinear"

def test_verify_same(runner):
    assert runner.invoke(cli, ["verify", "x", "x"]).output.strip() == "ProvenLinear"

def test_verify_different(runner):
    result = runner.invoke(cli, ["verify", "x|y", "x+y"])
    assert result.exit_code == 1
    assert result.output.strip() == "Different at {x=1, y=1}: 1 vs 2"

@pytest.mark.parametrize("mode, expected", [
    ("exhaustive", "ProvenExhaustive"),
    ("sample", "ProbablySame (14 samples)"),
])
def test_verify_modes(runner, mode, expected):
    result = runner.invoke(cli, ["verify", "--bits", "4", "--mode", mode, "--samples", "10", "x*y",
                                 "(x&y)*(x|y)+(x&~y)*(~x&y)"])
    assert result.exit_code == 0
    assert result.output.strip() == expected

def test_verify_linear_mode_rejects_nonlinear(runner):
    result = runner.invoke(cli, ["verify", "x*y", "y*x"])
    assert result.exit_code == 1
    assert "Not a linear MBA" in result.output

def test_verify_budget(runner):
    result = runner.invoke(cli, ["verify", "--mode", "exhaustive", "x", "y"])
    assert result.exit_code == 1
    assert "budget" in result.output

def test_verify_dataset(runner, dataset):
    result = runner.invoke(cli, ["verify", "--dataset", dataset])
    assert result.exit_code == 0
    assert result.output.strip() == "4 of 4 records equivalent."

def test_verify_corrupted_dataset(runner, dataset, tmpdir):
    with open(dataset) as fh:
        lines = fh.read().splitlines()
    lines[-1] = lines[-1].rsplit(",", 1)[0] + ",x|y"
    corrupted = tmpdir.join("corrupted.csv")
    corrupted.write("\n".join(lines) + "\n")
    result = runner.invoke(cli, ["verify", "--dataset", str(corrupted)])
    assert result.exit_code == 1
    assert "line %i: Different at {" % len(lines) in result.output
    assert "3 of 4 records equivalent." in result.output

@pytest.mark.parametrize("args", [["verify", "x"], ["verify", "x", "y", "--dataset", __file__]])
def test_verify_usage(runner, args):
    assert runner.invoke(cli, args).exit_code == 2

def test_bench(runner, dataset):
    result = runner.invoke(cli, ["bench", "--dataset", dataset, "--repeat", "2", "--json"])
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["total"] == 4
    assert document["repeat"] == 2
    assert len(document["pass_means"]) == 2
    assert list(document["by_variables"]) == ["2"]

def test_bench_empty(runner, tmpdir):
    path = tmpdir.join("empty.csv")
    path.write("# complex,simple\n")
    result = runner.invoke(cli, ["bench", "--dataset", str(path)])
    assert result.exit_code == 0
    assert "Total: 0" in result.output

def test_tree(runner):
    result = runner.invoke(cli, ["tree", "x&y|z"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "OR |  [x&y|z]"

def test_tables(runner, tmpdir):
    result = runner.invoke(cli, ["tables", "--max-t", "2", "--cache-dir", str(tmpdir)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "t=1: 4 entries (%s)" % os.path.join(str(tmpdir), "lookup_t1.json")
    assert lines[1].startswith("t=2: 16 entries")
    assert os.path.exists(os.path.join(str(tmpdir), "lookup_t2.json"))

def test_config_file(runner, tmpdir):
    path = tmpdir.join("linmba.yaml")
    path.write("bits: 8\n")
    result = runner.invoke(cli, ["--config", str(path), "simplify", "255*x+256"])
    assert result.output.strip() == "-x"

def test_bad_config_file(runner, tmpdir):
    path = tmpdir.join("linmba.yaml")
    path.write("width: 8\n")
    assert runner.invoke(cli, ["--config", str(path), "simplify", "x"]).exit_code == 2
