import csv
import io
import json
import subprocess
import sys

import pytest

from soergelring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_alg_normalize(capsys):
    code, out, _ = run(capsys, "alg", "normalize", "C1*C1")
    assert code == 0
    assert out.strip() == "(v + v^-1)*C1"
    code, out, _ = run(capsys, "alg", "normalize", "C1*C3*C2*C1", "--format", "json")
    assert json.loads(out) == [{"word": "C1*C2*C3*C1", "coeff": {"0": 1}}]


def test_alg_bad_word(capsys):
    code, _, err = run(capsys, "alg", "normalize", "C1*C5")
    assert code == 2
    assert "position" in err


def test_alg_verify_iso(capsys):
    code, out, _ = run(capsys, "alg", "verify-iso")
    assert code == 0
    assert "determinant: v^30" in out
    assert "PASS" in out


def test_grot_mul(capsys):
    code, out, _ = run(capsys, "grot", "mul", "B:t1 * B:t3")
    assert code == 0
    assert out.strip() == "v^2*R{e,s1*s2,s1,s2}"
    code, out, _ = run(capsys, "grot", "mul", "B:t1", "B:t1", "--format", "json")
    assert json.loads(out) == [{"set": ["e", "s1"], "coeff": {"2": 1, "0": 1}}]


def test_grot_mul_extended_twist(capsys):
    code, out, _ = run(capsys, "grot", "mul", "Rw:s1*s2 * B:t1", "--variant", "extended")
    assert code == 0
    assert out.strip() == "v*R{s1*s2,s1*s2*s1}"


def test_grot_errors(capsys):
    code, _, err = run(capsys, "grot", "mul", "B:t1 * R{s1,q}")
    assert code == 2
    assert "^" in err
    code, _, err = run(capsys, "grot", "mul", "R{s1,s2}")
    assert code == 2
    assert "not a basis class" in err
    code, _, _ = run(capsys, "grot", "frobnicate")
    assert code == 2


def test_grot_table_csv(capsys):
    code, out, _ = run(capsys, "grot", "table", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["left", "right", "result", "coeff"]
    assert len(rows) == 20 ** 3 + 1


def test_grot_table_other_formats(capsys):
    _, out, _ = run(capsys, "grot", "table", "--format", "json")
    data = json.loads(out)
    assert len(data["basis"]) == 20 and len(data["table"]) == 400
    _, again, _ = run(capsys, "grot", "table", "--format", "json")
    assert again == out
    _, out, _ = run(capsys, "grot", "table", "--format", "latex")
    assert out.startswith("\\begin{longtable}") and out.rstrip().endswith("\\end{longtable}")
    _, out, _ = run(capsys, "grot", "table")
    assert len(out.splitlines()) == 400


def test_grot_verify(capsys):
    code, out, _ = run(capsys, "grot", "verify", "--variant", "extended", "--samples", "50")
    assert code == 0
    assert "FAIL" not in out


def test_char_word(capsys):
    code, out, _ = run(capsys, "char", "word", "B:tst * B:s * B:t", "--group", "b2")
    assert code == 0
    assert out.count("1*") == 8
    code, out, _ = run(capsys, "char", "word", "B:s * Rw:t * B:u", "--group", "a3", "--format", "json")
    assert json.loads(out) == {"t": 1, "t*u": 1, "s*t": 1, "s*t*u": 1}
    code, _, _ = run(capsys, "char", "word", "R{e}", "--group", "a2")
    assert code == 2
    code, _, _ = run(capsys, "char", "word", "B:s", "--group", "h3")
    assert code == 2


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "--group", "b2", "--set", "W", "--maxdeg", "12", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["set", "k", "dim"]
    assert [int(r[2]) for r in rows[1:4]] == [1, 4, 9]
    code, out, _ = run(capsys, "hilbert", "--group", "a2", "--set", "{e,t1}", "--maxdeg", "3", "--format", "json")
    assert json.loads(out)["dims"] == {"{e,s1}": [1, 3, 5, 7]}
    code, _, _ = run(capsys, "hilbert", "--group", "i2:5")
    assert code == 2


def test_explore_reports(capsys):
    code, out, _ = run(capsys, "explore", "b2-counterexample", "--maxdeg", "6")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "explore", "remark-comb", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "explore", "closure", "--generators", "B:sts,B:t,B:u", "--budget", "10000")
    assert code == 0
    assert "opaque" in out
    code, _, _ = run(capsys, "explore", "closure", "--generators", "B:st", "--group", "b2")
    assert code == 2


def test_explore_a3_failure_prints_witness(capsys):
    code, out, _ = run(capsys, "explore", "a3-checks")
    assert code == 1
    witness = json.loads(out.strip().splitlines()[-1])["witness"]
    assert witness and all("check" in w for w in witness)


def test_verify_all_a2(capsys):
    code, out, _ = run(capsys, "verify-all", "--group", "a2")
    assert code == 0, out
    assert "FAIL" not in out


def test_verify_all_bad_group(capsys):
    code, _, _ = run(capsys, "verify-all", "--group", "g2")
    assert code == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "soergelring.cli", "alg", "normalize", "C1*C1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "(v + v^-1)*C1"
