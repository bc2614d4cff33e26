import json
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from bredon_quadrics import __version__
from bredon_quadrics.cli import OutputRecord, main

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "output_record.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


def test_group(capsys):
    assert run(capsys, "group", "-n", "1", "-s", "0", "-p", "2", "-q", "1")[:2] == (0, "Z")
    assert run(capsys, "group", "-n", "1", "-s", "0", "-p", "1", "-q", "1")[:2] == (0, "Z/2")
    code, payload = run_json(capsys, "group", "-n", "1", "-s", "0", "-p", "2", "-q", "1")
    assert code == 0 and payload["result"]["rank"] == 1 and payload["result"]["torsion"] == []
    assert payload["version"] == __version__


def test_group_rejects_witt_index(capsys):
    code, _, err = run(capsys, "group", "-n", "1", "-s", "1", "-p", "0", "-q", "0")
    assert code == 2 and "s=1" in err


def test_ring(capsys):
    code, out, _ = run(capsys, "ring", "-n", "3", "-s", "0")
    assert code == 0 and out == "A[h]/(e^5 + e*t*h^2, e^3*h, h^4)"
    code, out, _ = run(capsys, "ring", "-n", "2", "-s", "1")
    assert out.startswith("B_1[h,x,y,eta]/(") and "h^2 - 2*eta" in out
    code, payload = run_json(capsys, "ring", "-n", "6", "-s", "0")
    assert code == 0 and payload["result"]["base"] == "A"


def test_mul(capsys):
    assert run(capsys, "mul", "-n", "2", "-s", "1", "h", "h")[1] == "2*eta"
    assert run(capsys, "mul", "-n", "2", "-s", "1", "eta", "eta")[1] == "0"
    assert run(capsys, "mul", "-n", "4", "-s", "0", "h^4", "h")[1] == "0"
    code, _, err = run(capsys, "mul", "-n", "2", "-s", "1", "h", "bogus")
    assert code == 2 and err


def test_e2(capsys):
    code, out, _ = run(capsys, "e2", "-n", "2", "-q", "1")
    assert code == 0
    rows = {ln.split()[0]: ln.split()[1:] for ln in out.splitlines()[1:]}
    for j in ("j=1", "j=3"):
        assert set(rows[j]) == {"0"}
    code, payload = run_json(capsys, "e2", "-n", "1", "-q", "0")
    assert code == 0
    cells = payload["result"]["cells"]
    assert all(c["rank"] == 0 and not c["torsion"] for c in cells if c["j"] % 2)


def test_e2_anti_invariant_rows(capsys):
    _, payload = run_json(capsys, "e2", "-n", "4", "-q", "0")
    middle = sorted((c for c in payload["result"]["cells"] if c["j"] == 4), key=lambda c: c["i"])
    # middle codimension is the regular module: Z in column 0, nothing above it,
    # where the tensor description would put Z/2 in the even columns
    assert (middle[0]["rank"], middle[0]["torsion"]) == (1, [])
    assert all(c["rank"] == 0 and not c["torsion"] for c in middle[1:])


def test_chow_and_table(capsys):
    code, out, _ = run(capsys, "chow", "-n", "2")
    assert code == 0 and "phi" in out
    code, out, _ = run(capsys, "table", "-n", "1", "--window", "0:2:0:1")
    lines = out.splitlines()
    assert lines[0] == "p\tq\trank\ttorsion" and len(lines) == 7
    assert "1\t1\t0\t2" in lines
    run_json(capsys, "table", "-n", "2", "-s", "1", "--window", "0:4:-1:1")
    run_json(capsys, "chow", "-n", "4")


def test_verify_suites(capsys):
    assert run(capsys, "verify", "--suite", "lemma-id", "--m-max", "32")[:2] == (0, "lemma-id: PASS")
    assert run(capsys, "verify", "--suite", "algebraic", "--n-max", "6")[0] == 0
    assert run(capsys, "verify", "--suite", "nonsense")[0] == 2
    code, out, _ = run(capsys, "verify", "--suite", "pfister", "--r-max", "2")
    assert code == 0 and "paper_discrepancy=true" in out
    code, payload = run_json(capsys, "verify", "--suite", "coeff-ring")
    assert code == 0 and payload["result"]["ok"]


def test_verify_isotropic_suite_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theorem-a", "--n-max", "4")
    assert code == 1 and out == "theorem-a: FAIL"


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["group", "-n", "x"]) == 2
    assert main(["table", "-n", "2", "--window", "1:2"]) == 2
    capsys.readouterr()


def test_record_round_trip():
    rec = OutputRecord("group", {"n": 1}, {"rank": 0, "torsion": [2]})
    assert OutputRecord.from_json(rec.to_json()) == rec


def test_cache_on_off_identical(capsys, tmp_path, monkeypatch):
    argv = ["group", "-n", "3", "-s", "1", "-p", "6", "-q", "3", "--format", "json"]
    monkeypatch.delenv("BREDON_CACHE_DIR", raising=False)
    main(argv)
    plain = capsys.readouterr().out
    monkeypatch.setenv("BREDON_CACHE_DIR", str(tmp_path))
    main(argv)
    first = capsys.readouterr().out
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1 and not list(tmp_path.glob(".tmp-*"))
    main(argv)
    second = capsys.readouterr().out
    assert plain == first == second


def test_cache_is_actually_read(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("BREDON_CACHE_DIR", str(tmp_path))
    argv = ["group", "-n", "1", "-s", "0", "-p", "2", "-q", "1", "--format", "json"]
    main(argv)
    capsys.readouterr()
    (path,) = tmp_path.glob("*.json")
    cached = json.loads(path.read_text())
    cached["rank"] = 99
    path.write_text(json.dumps(cached))
    main(argv)
    assert json.loads(capsys.readouterr().out)["result"]["rank"] == 99


def test_corrupt_cache_is_recomputed(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("BREDON_CACHE_DIR", str(tmp_path))
    argv = ["group", "-n", "1", "-s", "0", "-p", "2", "-q", "1", "--format", "json"]
    main(argv)
    capsys.readouterr()
    (path,) = tmp_path.glob("*.json")
    path.write_text("{not json")
    main(argv)
    assert json.loads(capsys.readouterr().out)["result"]["rank"] == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2), st.integers(0, 8), st.integers(-4, 4))
def test_text_and_json_agree(n, s, p, q):
    if 2 * s > n:
        return
    from bredon_quadrics.bigraded_core import FgAbGroup
    from bredon_quadrics.cli import cmd_group, render_text
    rec = cmd_group(n, s, p, q)
    payload = rec.to_json()
    jsonschema.validate(payload, SCHEMA)
    g = FgAbGroup(payload["result"]["rank"], tuple(payload["result"]["torsion"]))
    assert render_text(rec) == str(g)


@pytest.mark.parametrize("argv", [
    ["group", "-n", "2", "-s", "1", "-p", "4", "-q", "2"],
    ["ring", "-n", "4", "-s", "2"],
    ["mul", "-n", "3", "-s", "1", "h", "h^2"],
    ["e2", "-n", "3", "-q", "-1", "--i-max", "2"],
    ["chow", "-n", "5"],
    ["verify", "--suite", "e2-consistency", "--n-max", "3"],
])
def test_every_command_validates(capsys, argv):
    code, payload = run_json(capsys, *argv)
    assert code == 0 and payload["command"] == argv[0]
