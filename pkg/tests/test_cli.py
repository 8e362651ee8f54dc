import json
import subprocess
import sys

import pytest

from sheffer_lie import jsonio
from sheffer_lie.cli import format_poly, run
from sheffer_lie.groups import SPair, s_exp
from sheffer_lie.opmatrix import OpMatrix, nil_exp
from sheffer_lie.sheffer import catalog, sheffer_build
from sheffer_lie.symtensor import Context
from sheffer_lie import randoms as rnd

C1 = Context(1, 4)


def ok(argv):
    code, out, err = run(argv)
    assert code == 0, err
    return out


def doc(argv):
    return json.loads(ok(argv))


def inline(x):
    return json.dumps(jsonio.encode(x))


def test_build_and_factor_round_trip():
    built = doc(["build", "hermite", "--order", "4"])
    assert built["kind"] == "sheffer"
    factored = doc(["factor", json.dumps(built), "--order", "4"])
    assert jsonio.decode(factored) == catalog("hermite", C1)


def test_mul_inverse(rng):
    out = doc(["mul", "touchard", "falling_factorial", "--order", "4"])
    assert jsonio.decode(out).matrix == OpMatrix.identity(C1)
    inv = jsonio.decode(doc(["inverse", "touchard", "--order", "4"]))
    assert inv.matrix == sheffer_build(catalog("falling_factorial", C1)).matrix
    P = rnd.unipotent(rng, C1)
    back = jsonio.decode(doc(["inverse", inline(P), "--order", "4"]))
    assert jsonio.decode(doc(["mul", inline(P), inline(back), "--order", "4"])) == OpMatrix.identity(C1)


def test_exp_log_and_bracket(rng):
    ctx = Context(2, 3)
    w = rnd.algebra_pair(rng, ctx)
    flags = ["--dim", "2", "--order", "3"]
    p = jsonio.decode(doc(["exp", inline(w)] + flags))
    assert p == s_exp(w)
    assert jsonio.decode(doc(["log", inline(p)] + flags)) == w
    V = rnd.nilmatrix(rng, ctx)
    assert jsonio.decode(doc(["exp", inline(V)] + flags)) == nil_exp(V)
    br = jsonio.decode(doc(["bracket", inline(w), inline(w)] + flags))
    assert not br


def test_evolve_constant_curve(rng):
    w = rnd.algebra_pair(rng, C1)
    assert jsonio.decode(doc(["evolve", inline(w), "--order", "4"])) == s_exp(w)
    curve = rnd.curve_pair(rng, C1)
    assert isinstance(jsonio.decode(doc(["evolve", inline(curve), "--order", "4"])), SPair)


def test_membership_and_table_format():
    assert doc(["membership", "touchard"]) == {"kind": "membership", "sheffer": True,
                                               "appell": False, "umbral": True}
    assert ok(["membership", "hermite", "--format", "table"]).splitlines()[1].split() == ["appell", "True"]
    table = ok(["build", "hermite", "--order", "3", "--format", "table"]).splitlines()
    assert table[0].split() == ["1/1", "0/1", "-1/1", "0/1"]


def test_riordan_and_transpose():
    R = doc(["riordan", "pascal", "--order", "3"])
    assert R["kind"] == "riordan"
    rows = doc(["riordan", "pascal", "--order", "3", "--transpose"])["rows"]
    assert rows == [["1/1"], ["1/1", "1/1"], ["1/1", "2/1", "1/1"], ["1/1", "3/1", "3/1", "1/1"]]


def test_sequence():
    out = doc(["sequence", "hermite", "--order", "6", "--n", "4"])
    assert out["polynomials"] == [{"m": [4], "poly": "z^4 - 6*z^2 + 3"}]
    multi = doc(["sequence", "identity", "--dim", "2", "--order", "2", "--n", "2"])
    assert [p["poly"] for p in multi["polynomials"]] == ["z2^2", "z1*z2", "z1^2"]


def test_format_poly():
    assert format_poly({(3,): 1, (1,): -3}, 1) == "z^3 - 3*z"
    assert format_poly({}, 1) == "0"
    assert format_poly({(0,): -1}, 1) == "-1"


def test_operand_from_file(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(inline(catalog("pascal", C1)))
    assert doc(["build", f"@{path}", "--order", "4"]) == doc(["build", "pascal", "--order", "4"])


def test_flags_before_command():
    assert ok(["--order", "4", "build", "pascal"]) == ok(["build", "pascal", "--order", "4"])


def test_output_is_deterministic():
    argv = ["check", "groups", "--dim", "1", "--order", "4", "--instances", "3"]
    assert ok(argv) == ok(argv)


def test_check_report():
    report = doc(["check", "classical", "--order", "6", "--instances", "2"])
    assert report["ok"] is True
    assert all(r["passed"] == r["instances"] for r in report["results"])
    assert {r["suite"] for r in report["results"]} == {"classical"}


@pytest.mark.parametrize("argv", [
    [],
    ["build"],
    ["frobnicate", "x"],
    ["build", "{not json"],
    ["build", "[1, 2]"],
    ["build", "@/nonexistent/file.json"],
    ["sequence", "hermite"],
    ["check", "nosuch"],
    ["build", "hermite", "--order", "-1"],
])
def test_usage_errors_exit_1(argv):
    code, out, err = run(argv)
    assert code == 1 and out == "" and err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ["build", "laguerre"],
    ["build", "hermite", "--dim", "2"],
    ["sequence", "hermite", "--order", "3", "--n", "5"],
    ["mul", "hermite", "{\"kind\": \"nilmatrix\", \"dim\": 1, \"order\": 6, \"blocks\": []}"],
    ["exp", "pascal"],
])
def test_domain_errors_exit_2(argv):
    code, out, err = run(argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_context_mismatch_is_an_error():
    text = inline(catalog("pascal", Context(1, 3)))
    code, _, err = run(["build", text, "--order", "4"])
    assert code == 2 and "differs" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sheffer_lie", "sequence", "hermite", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["polynomials"][0]["poly"] == "z^2 - 1"
