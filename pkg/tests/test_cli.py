import json
import time

import pytest

from str0d import verify
from str0d.cli import main
from str0d.io import frame_from_json

CHAIN3 = {"name": "chain3", "elements": ["0", "a", "1"], "order": [["0", "a"], ["a", "1"]]}
M3 = {"name": "M3", "elements": ["0", "a", "b", "c", "1"],
      "order": [["0", "a"], ["0", "b"], ["0", "c"], ["a", "1"], ["b", "1"], ["c", "1"]]}


@pytest.fixture
def write(tmp_path):
    def _write(name, data, raw=False):
        p = tmp_path / name
        p.write_text(data if raw else json.dumps(data))
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(write, capsys):
    assert run(capsys, "validate", write("c.json", CHAIN3))[0] == 0
    code, _, err = run(capsys, "validate", write("m3.json", M3))
    assert code == 1 and "NotDistributive" in err
    assert run(capsys, "validate", "/nonexistent/file.json")[0] == 2
    assert run(capsys, "validate", write("bad.json", "{not json", raw=True))[0] == 2


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


@pytest.mark.parametrize("frame, count", [(CHAIN3, 4), ("2", 2), ("2^3", 8)])
def test_cong_counts(write, capsys, frame, count):
    code, out, _ = run(capsys, "cong", write("f.json", frame), "--json", "--brute-force")
    report = json.loads(out)
    assert code == 0 and report["count"] == count and report["oracleAgrees"]
    assert set(report) >= {"nabla", "delta", "clear"}


def test_cong_tables_for_chain3(write, capsys):
    _, out, _ = run(capsys, "cong", write("f.json", CHAIN3), "--json")
    report = json.loads(out)
    assert report["clear"]["0"] == "{0}{a,1}"
    assert report["nabla"]["a"] == "{0,a}{1}"


def test_hard_cap(write, capsys, monkeypatch):
    monkeypatch.setenv("STR0D_HARD_CAP", "3")
    code, _, err = run(capsys, "cong", write("f.json", "chain4"))
    assert code == 1 and "BoundExceeded" in err


def test_analyze_str0d_coreflect(write, capsys):
    code, out, _ = run(capsys, "analyze", write("f.json", CHAIN3), "--json")
    assert code == 0 and json.loads(out)["congruenceCount"] == 4
    cc = write("b.json", "C(chain3)")
    code, out, _ = run(capsys, "str0d", cc, "--json")
    assert code == 0 and json.loads(out)["isStr0d"]
    code, out, _ = run(capsys, "coreflect", cc, "--json")
    assert json.loads(out)["isCongruential"]
    non = {"frame": CHAIN3, "part1": ["0", "a", "1"], "part2": ["0", "1"]}
    assert run(capsys, "str0d", write("n.json", non))[0] == 1
    assert run(capsys, "coreflect", write("n.json", non))[0] == 1


def test_recognize(write, capsys):
    _, out, _ = run(capsys, "recognize", write("f.json", CHAIN3), "--json")
    assert json.loads(out)["isCongruenceFrame"] is False
    _, out, _ = run(capsys, "recognize", write("f.json", "2^2"), "--json")
    report = json.loads(out)
    assert len(report["witnesses"]) == 3


def test_skula_and_fibre(write, capsys):
    sp = {"points": ["x", "y"], "opens": [[], ["x"], ["x", "y"]]}
    code, out, _ = run(capsys, "skula", write("s.json", sp), "--json")
    report = json.loads(out)
    assert code == 0 and report["sober"] and report["roundTrip"]
    assert len(report["biframe"]["frame"]["elements"]) == 4
    notT0 = {"points": ["x", "y"], "opens": [[], ["x", "y"]]}
    assert run(capsys, "skula", write("s2.json", notT0))[0] == 1
    code, out, _ = run(capsys, "fibre", write("f.json", CHAIN3), "--json")
    assert len(json.loads(out)["fibre"]) == 1


def test_limits(write, capsys):
    d = write("d.json", {"objects": {"X": "C(chain3)", "Y": "C(2)"}, "arrows": []})
    for cmd in ("colimit", "limit"):
        code, out, _ = run(capsys, cmd, d, "--json")
        report = json.loads(out)
        assert code == 0 and report["universalPropertyChecks"] > 0
        assert set(report["legs"]) == {"X", "Y"}


@pytest.mark.parametrize("kind, n, count", [("frames", 4, 5), ("spaces", 2, 3), ("frames", 0, 0),
                                            ("biframes", 8, 9)])
def test_enumerate(capsys, kind, n, count):
    code, out, _ = run(capsys, "enumerate", "--kind", kind, "--max-size", str(n), "--json")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == count
    assert all(json.loads(line) for line in lines)


def test_enumerate_bound(capsys):
    assert run(capsys, "enumerate", "--kind", "frames", "--max-size", "12")[0] == 1


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas-1.x", "--max-size", "4", "--json")
    report = json.loads(out)
    assert code == 0 and report["passed"] and report["violations"] == []
    code, out, _ = run(capsys, "verify", "--suite", "recognizer", "--max-size", "8")
    assert code == 0 and "chain3: NO" in out and "2^3: YES" in out and "2^2: YES" in out
    start = time.perf_counter()
    code, out, _ = run(capsys, "verify", "--suite", "all", "--max-size", "3")
    assert code == 0 and time.perf_counter() - start < 60
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_output_is_deterministic(write, capsys):
    path = write("f.json", "2^2")
    first = run(capsys, "cong", path, "--json")[1]
    second = run(capsys, "cong", path, "--json")[1]
    assert first == second
    a = run(capsys, "enumerate", "--kind", "biframes", "--max-size", "8", "--json")[1]
    b = run(capsys, "enumerate", "--kind", "biframes", "--max-size", "8", "--json")[1]
    assert a == b


def test_counterexamples_replay(write, capsys, monkeypatch):
    """A violation's counterexample validates and reproduces the failure."""
    from str0d.congruence import identity_congruence

    monkeypatch.setattr(verify, "clear_congruence", lambda L, a: identity_congruence(L))
    report = verify.run_suite("structure", 4)
    assert not report.passed
    bad = next(v for v in report.violations if v["check"] == "clear congruence closed form matches search")
    path = write("cex.json", bad["counterexample"])
    assert run(capsys, "validate", path)[0] == 0
    L = frame_from_json(bad["counterexample"])
    replay = verify.VerifyReport("replay")
    from str0d.congruence import clear_congruence_search, congruence_lattice

    replay.check("closed form", lambda: all(
        verify.clear_congruence(L, a) == clear_congruence_search(congruence_lattice(L), a) for a in range(L.n)
    ), lambda: None)
    assert not replay.passed
