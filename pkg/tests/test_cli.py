import json
import subprocess
import sys

import pytest

from conftest import FIXTURES, ROOT


def run(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "nivat", *args],
        capture_output=True, text=True, cwd=ROOT, timeout=120,
    )
    return proc.returncode, proc.stdout, proc.stderr


def fx(name):
    return str(FIXTURES / name)


def test_complexity_exact():
    code, out, _ = run("complexity", "2", "3", "--seed-file", fx("checkerboard.cfg"))
    assert code == 0
    assert out.strip() == "P = 2 (exact), nk = 6, hypothesis holds"


def test_complexity_sampled_fails_hypothesis():
    code, out, _ = run("complexity", "3", "3", "--seed-file", fx("fibonacci_sum.cfg"), "--radius", "100")
    assert code == 0 and "hypothesis fails" in out


def test_exact_on_sampled_source_warns():
    code, _, err = run("complexity", "2", "2", "--seed-file", fx("thue_morse_layer.cfg"), "--exact")
    assert code == 0 and "warning" in err


def test_annihilate_machine():
    code, out, _ = run("annihilate", "3", "2", "--seed-file", fx("periodic_3x2.cfg"), "--machine")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "annihilate" and doc["exit_code"] == 0
    assert doc["results"]["c"] == 17


def test_annihilate_precondition():
    code, out, _ = run("annihilate", "3", "3", "--seed-file", fx("fibonacci_sum.cfg"), "--radius", "100")
    assert code == 2 and "P = 16 > |S| = 9" in out


def test_annihilate_verify_section():
    code, out, _ = run("annihilate", "--seed-file", fx("constant.cfg"))
    assert code == 0 and "annihilates" in out


def test_decompose_window():
    code, out, _ = run("decompose", "--seed-file", fx("fibonacci_sum.cfg"),
                       "--periods", "(0,1) (1,0)", "--window", "0,0,8,8")
    assert code == 0
    code, out, _ = run("decompose", "--seed-file", fx("fibonacci_sum.cfg"),
                       "--periods", "(1,0) (1,1)", "--window", "0,0,6,6")
    assert code == 2 and "not decomposable" in out


def test_usage_errors(tmp_path):
    assert run("complexity", "2", "2", "--seed-file", fx("missing.cfg"))[0] == 1
    assert run("szabados", "--seed-file", fx("periodic_3x2.cfg"))[0] == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text("[source main]\nkind = nonsense\n")
    code, _, err = run("complexity", "2", "2", "--seed-file", str(bad))
    assert code == 1 and "line 2" in err
    assert run("complexity", "--seed-file", fx("constant.cfg"))[0] != 0


def test_szabados_human():
    code, out, _ = run("szabados", "--seed-file", fx("thue_morse_layer.cfg"))
    assert code == 0
    assert [l.split(":")[0] for l in out.splitlines() if l[:2] in ("A:", "B:", "C:")] == ["A", "B", "C"]
    assert "fail" not in out


@pytest.mark.parametrize("cmd", ["complexity", "directions"])
def test_machine_output_repeatable(cmd):
    args = [cmd, "--seed-file", fx("checkerboard.cfg"), "--machine"]
    if cmd == "complexity":
        args[1:1] = ["2", "2"]
    assert run(*args) == run(*args)


def test_machine_usage_error_is_a_document():
    code, out, err = run("decompose", "--seed-file", fx("constant.cfg"), "--machine")
    assert code == 1 and "error" in err
    doc = json.loads(out)
    assert doc["exit_code"] == 1 and "decomposition" in doc["results"]["error"]
