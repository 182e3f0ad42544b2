"""Command language grammar and the CLI front end."""

import json

import pytest

from mmx.cli import main
from mmx.errors import ParseError, Unsupported
from mmx.exprlang import eval_text, parse
from mmx.modules import C, Pr, Zp, direct_sum, cyclic, normalize, padic


def test_parse_command_shape():
    cmd = parse("ext 1 Pr(2)+Z/4 Z/8")
    assert cmd.op == "ext"
    assert cmd.params == (1,)
    assert cmd.modules == (
        direct_sum(normalize([Pr(2)]), cyclic(4)),
        cyclic(8),
    )
    cmd = parse("tensor Z/12 Z/18")
    assert cmd.modules == (cyclic(12), cyclic(18))


def test_parse_flags_and_params():
    cmd = parse("hom --ring=p:2 Zp(2) Pr(2)")
    assert cmd.ring == padic(2)
    cmd = parse("gamma 2 3 Pr(2)+Pr(3)+Pr(5)")
    assert cmd.params == (2, 3)
    cmd = parse("bass 0 generic Z^3")
    assert cmd.params == (0, "generic")
    cmd = parse("tor 0 Z/2 Z/2")
    assert cmd.params == (0,)


def test_parse_repetition_and_nesting():
    cmd = parse("len (Z/2+Z/4)^3")
    assert cmd.modules[0] == normalize([C(2, 1)] * 3 + [C(2, 2)] * 3)
    cmd = parse("len Z/1")
    assert cmd.modules[0].is_zero


def test_parse_errors():
    with pytest.raises(ParseError) as err:
        parse("hom Pr(2")
    assert err.value.position == 9
    with pytest.raises(ParseError):
        parse("frobenius Z Z")
    with pytest.raises(ParseError):
        parse("hom Z Z Z")  # trailing input
    with pytest.raises(ParseError):
        parse("hom --ring=q:2 Z Z")
    with pytest.raises(ParseError):
        parse("len Z/0")
    with pytest.raises(Unsupported):
        parse("len Z^10001")


def test_eval_examples():
    assert eval_text("hom Pr(2) Pr(2)") == {
        "ok": True,
        "result": {"locals": {"2": {"adic": 1}}},
        "ring": {"product": [2]},
        "path": "direct",
    }
    out = eval_text("dual Z")
    assert out["ok"] is False and out["error"] == "NotRepresentable"
    assert eval_text("tensor Pr(2) Pr(2)")["result"] == {}
    assert eval_text("len Z/1") == {"ok": True, "result": 0}
    assert eval_text("ext 1 Pr(2)+Z/4 Z/8")["result"] == {"locals": {"2": {"finite": [2, 3]}}}


def test_eval_structure_ops():
    assert eval_text("supp Pr(2)+Z/3") == {
        "ok": True,
        "result": {"full": False, "generic": False, "maximals": ["2", "3"]},
    }
    assert eval_text("ann Z/8+Z/2+Z/25")["result"] == 200
    assert eval_text("reflexive Z/6")["result"] is True
    assert eval_text("reflexive Pr(2)")["result"] is False
    out = eval_text("homc Pr(2)+Z/4 Z+Z/8")
    assert out["result"] == {"locals": {"2": {"finite": [2]}}}
    assert out["annihilator_bound"] == 4
    assert eval_text("theta 1 Pr(2) Z/4")["result"] is True
    assert eval_text("bound Pr(2) Pr(2)")["result"]["holds"] is True
    assert eval_text("vanish Z/2 Z/3")["result"]["vanishes"] is True


def test_eval_errors_in_band():
    out = eval_text("hom Pr(2")
    assert out == {
        "ok": False,
        "error": "ParseError",
        "detail": "unexpected end of input (at position 9)",
    }
    out = eval_text("att Z")
    assert out["ok"] is False and out["error"] == "NotArtinian"
    out = eval_text("hom --ring=p:2 Z Z")
    assert out["error"] == "InvalidRing"
    out = eval_text("bass generic 2 Z")
    assert out["error"] == "ParseError"


def test_cli_eval(capsys):
    assert main(["eval", "hom Pr(2) Pr(2)"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is True
    assert main(["eval", "dual Z"]) == 1


def test_cli_check(capsys):
    assert main(["check", "--suite", "lengths", "--cases", "5", "--seed", "1"]) == 0
    line = capsys.readouterr().out.strip()
    assert line == "suite=lengths seed=1 cases=5 passed=5 failed=0"
    assert main(["check", "--suite", "nope", "--cases", "1"]) == 1


def test_cli_check_reports_are_reproducible(capsys):
    argv = ["check", "--suite", "decomposition", "--cases", "20", "--seed", "9"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_cli_oracle_diff(capsys):
    assert main(["oracle-diff", "--cases", "10", "--seed", "3"]) == 0
    assert "failed=0" in capsys.readouterr().out


def test_cli_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("MMX_SEED", "77")
    assert main(["check", "--suite", "theta", "--cases", "3"]) == 0
    assert "seed=77" in capsys.readouterr().out
