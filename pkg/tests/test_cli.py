from pathlib import Path

import pytest

import numera.fixtures
from numera.automata import parse_automaton
from numera.cli import main

FIX = Path(numera.fixtures.__file__).parent


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def ex5(*rest):
    return (rest[0], "--automaton", FIX / "ex5.an") + rest[1:]


def test_val_rep_interval(capsys):
    assert run(capsys, *ex5("val", "--word", "aac")) == (0, "5\n", "")
    code, out, _ = run(capsys, *ex5("rep", "--n", "5"))
    assert (code, out) == (0, "aac\n")
    assert run(capsys, *ex5("interval", "--prefix", "ab"))[1] == "[5/8, 3/4]\n"


def test_represent_table(capsys):
    code, out, _ = run(capsys, *ex5("represent", "--x", "4/7"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "word = a(acc)^w"
    assert lines[1] == "detected: step 1 = step 4"
    assert lines[3:] == ["  0 q0 1/7 a", "  1 q1 1/7 a", "  2 q2 4/7 c", "  3 q1 4/7 c", "  4 q1 1/7 -"]


def test_represent_options(capsys):
    code, out, _ = run(capsys, *ex5("represent", "--x", "3/4", "--both", "--cross-check", "--no-trace"))
    assert code == 0
    assert "trace:" not in out
    assert out.splitlines()[0].startswith("word = ")
    assert out.splitlines()[-1].startswith("left = ")


def test_represent_irrational_value(capsys):
    fib = FIX / "fib.an"
    code, out, _ = run(capsys, "represent", "--automaton", fib, "--x", "poly:[0,1/2]", "--no-trace")
    assert code == 0 and out.startswith("word = ")


def test_value_up_and_info(capsys):
    code, out, _ = run(capsys, *ex5("value-up", "--word", "(ab)^w"))
    assert out == "value = 2/3 (≈ 0.666667)\n"
    code, out, _ = run(capsys, *ex5("info"))
    assert "theta: 2 (≈ 2.000000)" in out
    assert "a[q1] = 2 (exponential)" in out


def test_exact_flag(capsys):
    code, out, _ = run(capsys, "--exact", "--digits", "10", "value-up", "--automaton", FIX / "fib.an",
                       "--word", "1(0)^w")
    assert code == 0
    assert out.startswith("value = ")
    assert "0.6180339887" in out


def test_language_commands_emit_automata(capsys):
    for cmd in ("per", "aper", "simplify"):
        code, out, _ = run(capsys, *ex5(cmd))
        assert code == 0
        parse_automaton(out)
    code, out, _ = run(capsys, *ex5("uper"))
    assert out.startswith("blocks: 3\n")


def test_fixed_points(capsys):
    code, out, _ = run(capsys, *ex5("fixed-points", "--cycle-len", "5", "--path-len", "1", "--sort"))
    assert code == 0
    assert "value = 4/5 (≈ 0.800000) word = a(cacc)^w" in out
    assert "value = 18/31" in out


def test_check(capsys):
    code, out, _ = run(capsys, *ex5("check"))
    assert code == 0 and out.startswith("verdict: PASS")


def test_pisot_commands(capsys):
    code, out, _ = run(capsys, "pisot", "expand1", "--poly", "1 -1 -1")
    assert code == 0
    assert "pisot: Pisot" in out and "e(1) = 1 1" in out and "e*(1) = (1 0)^w" in out
    code, out, _ = run(capsys, "pisot", "build", "--poly", "1,-1,-1", "--terms", "6")
    assert "U: 1 2 3 5 8 13" in out
    code, out, _ = run(capsys, "pisot", "equiv", "--poly", "1 -1 -1", "--random", "3", "--max-len", "3")
    assert code == 0 and out.endswith("PASS\n")
    code, out, _ = run(capsys, "pisot", "equiv", "--poly", "1 -1 -1", "--samples", "1", "3/4",
                       "--max-len", "2")
    assert code == 0 and "samples: 2 mismatches: 0" in out


def test_usage_errors(capsys):
    assert run(capsys)[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["--digits", "0", "info", "--automaton", str(FIX / "ex5.an")])
    assert exc.value.code == 1


def test_domain_errors(capsys):
    code, _, err = run(capsys, *ex5("represent", "--x", "1/4"))
    assert code == 2 and err.startswith("error:")
    assert run(capsys, *ex5("interval", "--prefix", "b"))[0] == 2
    assert run(capsys, "pisot", "expand1", "--poly", "1 0 -3", "--max-steps", "50")[0] == 2


def test_format_errors(capsys, tmp_path):
    bad = tmp_path / "bad.an"
    bad.write_text("alphabet: a\nstates: q0\ninitial: q9\n")
    assert run(capsys, "info", "--automaton", bad)[0] == 3
    assert run(capsys, "info", "--automaton", tmp_path / "missing.an")[0] == 3
    assert run(capsys, *ex5("represent", "--x", "x/y"))[0] == 3
    assert run(capsys, "pisot", "expand1", "--poly", "one two")[0] == 3


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("NUMERA_BUDGET_STEPS", "2")
    code, out, _ = run(capsys, *ex5("represent", "--x", "4/7", "--no-trace"))
    assert code == 0 and "no period within budget" in out
    monkeypatch.setenv("NUMERA_BUDGET_STEPS", "many")
    assert run(capsys, *ex5("represent", "--x", "4/7"))[0] == 3


def test_output_is_reproducible(capsys):
    argv = ex5("fixed-points", "--cycle-len", "4", "--path-len", "2")
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first
    argv = ("pisot", "equiv", "--poly", "1 -3 1", "--random", "4", "--max-len", "2")
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first
