import json
import subprocess
import sys

import pytest

from sympcliff.cli import EXIT_EVAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tables_process(capsys):
    code, out, _ = call(capsys, "tables", "--algebra", "process")
    assert code == EXIT_OK
    rows = [line.split() for line in out.strip().splitlines()]
    assert rows == [["1", "[P0P1]", "[P0P2]", "[P1P2]"],
                    ["[P0P1]", "-e", "-[P1P2]", "[P0P2]"],
                    ["[P0P2]", "[P1P2]", "-e", "-[P0P1]"],
                    ["[P1P2]", "-[P0P2]", "[P0P1]", "-e"]]


@pytest.mark.parametrize("algebra", ["quaternion", "endf"])
def test_tables_json(capsys, algebra):
    code, out, _ = call(capsys, "tables", "--algebra", algebra, "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert len(rows) == 4 and all(len(r) == 4 for r in rows)


def test_bracket(capsys):
    assert call(capsys, "bracket", "{q*p, p^2/2}")[:2] == (EXIT_OK, "p^2\n")
    assert call(capsys, "bracket", "q*p", "q^2/2")[:2] == (EXIT_OK, "-q^2\n")
    code, out, _ = call(capsys, "bracket", "{q^2/2, p^2/2}", "--format", "json")
    assert json.loads(out)["quadratic"] == {"q^2": "0", "p^2": "0", "q*p": "1"}


def test_ham(capsys):
    assert call(capsys, "ham", "q^2/2")[:2] == (EXIT_OK, "[[0, 0], [-1, 0]]\n")
    code, _, err = call(capsys, "ham", "q")
    assert code == EXIT_EVAL and "^" in err


def test_quantize(capsys):
    code, out, _ = call(capsys, "quantize", "q*p")
    assert (code, out) == (EXIT_OK, "-i*Q*P - 1/2\n")
    code, out, _ = call(capsys, "quantize", "q*p", "--fock-dim", "4", "--format", "json")
    payload = json.loads(out)
    assert payload["fock_dim"] == 4 and len(payload["matrix"]) == 4


def test_spectrum(capsys):
    code, out, _ = call(capsys, "spectrum", "q^2/2 + p^2/2", "--fock-dim", "8", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx([0.5, 1.5, 2.5, 3.5, 3.5, 4.5, 5.5, 6.5])


def test_decompose(capsys):
    code, out, _ = call(capsys, "decompose", "--particles", "2", "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK and d["n"] == 6 and d["dimension"] == 12


def test_eval(capsys):
    assert call(capsys, "eval", "--mode", "quaternion", "i*j*k")[:2] == (EXIT_OK, "-e\n")
    assert call(capsys, "eval", "--mode", "endf", "[A,B]")[:2] == (EXIT_OK, "[[0, 2], [-2, 0]]\n")


def test_evaluation_error_exit_code(capsys):
    code, _, err = call(capsys, "eval", "q^3")
    assert code == EXIT_EVAL
    assert "exponent must be 1 or 2" in err and "byte 2" in err


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["tables"], ["tables", "--algebra", "octonion"],
    ["spectrum", "q*p", "--fock-dim", "2"], ["decompose", "--particles", "0"],
    ["verify", "--cases", "x"], ["eval", "--mode", "nope", "q"],
])
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == EXIT_USAGE
    assert "usage" in err and "expr    :=" in err


def test_verify_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = call(capsys, "verify", "--seed", "42", "--cases", "20", "--report", str(path))
    assert code == EXIT_OK
    data = json.loads(path.read_text())
    assert data["seed"] == 42 and data["summary"]["failed"] == 0
    assert "0 failed" in out


def test_verify_seed_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SYMPCLIFF_SEED", "7")
    path = tmp_path / "r.json"
    assert call(capsys, "verify", "--cases", "5", "--report", str(path))[0] == EXIT_OK
    assert json.loads(path.read_text())["seed"] == 7
    monkeypatch.setenv("SYMPCLIFF_SEED", "seven")
    assert call(capsys, "verify", "--cases", "5")[0] == EXIT_USAGE


def test_verify_failure_exit_code(capsys, monkeypatch):
    from sympcliff import verify
    monkeypatch.setitem(verify.REGISTRY, "zz.broken",
                        verify.Check("zz.broken", lambda rng, cases: (verify.FAIL, "forced")))
    code, out, _ = call(capsys, "verify", "--cases", "5")
    assert code == EXIT_VERIFY
    assert "fail: zz.broken: forced" in out


def test_unwritable_report(capsys, tmp_path):
    code, _, err = call(capsys, "verify", "--cases", "5", "--report", str(tmp_path / "no" / "r.json"))
    assert code == EXIT_EVAL and "no" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sympcliff.cli", "bracket", "{q*p, p^2/2}"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "p^2\n"
