import json
import shutil
import subprocess
import sys

import pytest

from zdkit.cli import format_hypernum, main, parse_hypernum


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_and_format():
    x = parse_hypernum("2e5 - e12 + 3", 4)
    assert x.terms() == {0: 3, 5: 2, 12: -1}
    assert format_hypernum(x) == "3+2e5-e12"
    assert format_hypernum(parse_hypernum("-e1", 3)) == "-e1"
    with pytest.raises(ValueError):
        parse_hypernum("e1 * e2", 3)


def test_trips(capsys):
    assert run(capsys, "trips", "--n", "5", "--count")[1] == "155\n"
    code, out, _ = run(capsys, "trips", "--n", "3")
    assert out.splitlines()[0] == "p,q,r" and len(out.splitlines()) == 8
    trips = json.loads(run(capsys, "trips", "--n", "3", "--format", "json")[1])
    assert [1, 2, 3] in trips


def test_mul(capsys):
    assert run(capsys, "mul", "e10+e3", "e12-e5")[1] == "0\n"
    assert run(capsys, "mul", "e10+e3", "e12+e5", "--oracle")[1] == "-2e6-2e15\n"


def test_assessors_and_boxkites(capsys):
    assert run(capsys, "assessors", "--count")[1] == "42\n"
    assert run(capsys, "boxkite", "--n", "5", "--count")[1] == "105\n"
    kites = json.loads(run(capsys, "boxkite", "--s", "1")[1])
    assert len(kites) == 1 and kites[0]["kind"] == "TypeI"


def test_et(capsys):
    assert run(capsys, "et", "--n", "5", "--s", "9", "--census")[1] == "filled=72 empty=124\n"
    census = json.loads(run(capsys, "et", "--n", "5", "--s", "9", "--census", "--format", "json")[1])
    assert census == {"n": 5, "s": 9, "filled": 72, "empty": 124}


def test_et_pgm_to_file(tmp_path, capsys):
    out = tmp_path / "et.pgm"
    assert run(capsys, "et", "--n", "5", "--s", "9", "--format", "pgm", "--out", str(out))[0] == 0
    assert out.read_bytes().startswith(b"P5\n14 14\n255\n")


def test_flipbook(tmp_path, capsys):
    code, out, _ = run(capsys, "flipbook", "--n", "5", "--s", "9..11", "--out", str(tmp_path))
    assert code == 0 and len(out.splitlines()) == 3


def test_brocade(capsys):
    out = run(capsys, "brocade")[1].splitlines()
    assert out[0] == ",1,2,3,4,5,6,7"
    assert out[2] == "10,3F,,1A,6B,7C,4E,5F"


def test_twist_and_hunt(capsys):
    t = json.loads(run(capsys, "twist", "--s", "1", "--edge", "AB")[1])
    assert t["target_s"] == 4 and t["pair"] == [[6, 10], [3, 15]]
    rh = json.loads(run(capsys, "twist", "--s", "1", "--strut", "AF")[1])
    assert rh["forms_trip"] and rh["second_twists_close"]


def test_explode_spandrel_egg(capsys):
    hbk = json.loads(run(capsys, "explode", "--s", "1", "--sail", "ade")[1])
    assert hbk["kind"] == "Hidden" and hbk["s"] == 9
    text = run(capsys, "spandrel", "--s", "1")[1]
    assert text.startswith("(S,X,G) = (9, 25, 16)")
    eggs = json.loads(run(capsys, "egg", "--s", "1")[1])
    assert [e["report"]["sail"] for e in eggs] == ["abc"] * 4
    assert all(e["report"]["ok"] for e in eggs)


def test_fano(capsys):
    p = json.loads(run(capsys, "fano", "--s", "1", "--member", "ade", "--sail", "ade")[1])
    assert p["shape"] == "SwallowsTail"
    dot = run(capsys, "fano", "--s", "1", "--format", "dot")[1]
    assert dot.startswith("digraph")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fano")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_errors(capsys):
    code, _, err = run(capsys, "et", "--n", "5", "--s", "16")
    assert code == 1 and "strut constant" in err
    code, _, err = run(capsys, "boxkite", "--s", "1", "--zigzag", "3,4,7")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["trips", "--bogus"])
    assert exc.value.code == 2


def test_console_script():
    exe = shutil.which("zdkit")
    cmd = [exe] if exe else [sys.executable, "-m", "zdkit"]
    out = subprocess.run(cmd + ["trips", "--n", "4", "--count"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "35\n"
