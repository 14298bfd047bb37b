import json

from sympcliff import verify
from sympcliff.verify import ERRATUM, FAIL, PASS, VerificationReport, emit_report, run_checks


def test_every_invariant_has_a_check():
    missing, unknown = verify.uncovered_invariants()
    assert missing == [] and unknown == []
    assert len(verify.INVARIANTS) >= 49


def test_empty_report_schema(tmp_path):
    path = tmp_path / "r.json"
    emit_report(VerificationReport("default", 3), path)
    data = json.loads(path.read_text())
    assert data == {"checks": [], "seed": 3, "suite": "default",
                    "summary": {"failed": 0, "passed": 0}, "tool_version": data["tool_version"]}


def test_report_is_canonical(tmp_path):
    r = VerificationReport("default", 1)
    r.add("b", PASS, "x")
    r.add("a", ERRATUM, "é")
    path = tmp_path / "r.json"
    emit_report(r, path)
    raw = path.read_bytes()
    assert raw.endswith(b"}\n") and b"\r" not in raw
    assert all(line == line.rstrip() for line in raw.decode("utf-8").splitlines())
    data = json.loads(raw)
    assert [c["name"] for c in data["checks"]] == ["a", "b"]
    assert data["summary"] == {"passed": 2, "failed": 0}
    assert raw.decode("utf-8") == json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def test_summary_counts():
    r = VerificationReport("default", 0)
    r.add("x", PASS, "")
    assert r.summary == {"passed": 1, "failed": 0}
    r.add("y", FAIL, "")
    assert r.summary == {"passed": 1, "failed": 1}


def test_default_suite_passes_and_is_deterministic():
    a = run_checks(42, 30)
    b = run_checks(42, 30)
    assert a.to_json() == b.to_json()
    assert a.summary["failed"] == 0
    statuses = {c["name"]: c["status"] for c in a.checks}
    assert statuses["poisson.bracket_identity_sign_erratum"] == ERRATUM
    assert statuses["quantize.hermitian_convention_erratum"] == ERRATUM


def test_check_streams_are_independent_of_order():
    one = run_checks(5, 20, ["graded.associativity"]).checks
    both = run_checks(5, 20, ["graded.associativity", "poisson.jacobi_identity"]).checks
    assert one[0] == both[0]


def test_crashing_check_is_a_failure(monkeypatch):
    def boom(rng, cases):
        raise RuntimeError("boom")
    monkeypatch.setitem(verify.REGISTRY, "zz.crash", verify.Check("zz.crash", boom))
    r = run_checks(0, 1, ["zz.crash"])
    assert r.checks[0]["status"] == FAIL and "boom" in r.checks[0]["detail"]
