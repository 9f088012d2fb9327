import json

import numpy as np
import pytest

from fusionforge.cli import dumps, main

from fixtures_util import load_golden


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ring_q6_matches_printed_matrices(capsys):
    code, out, _ = run(capsys, "ring", "--q", "6", "--family", "psl2", "--method", "verlinde")
    assert code == 0
    assert np.array_equal(np.array(json.loads(out)["N"]), load_golden(6)["N"])


def test_ring_methods_agree(capsys):
    _, a, _ = run(capsys, "ring", "--q", "15", "--method", "verlinde")
    _, b, _ = run(capsys, "ring", "--q", "15", "--method", "closed")
    assert a == b


def test_crosscheck_q21(capsys):
    code, out, _ = run(capsys, "crosscheck", "--q", "21", "--family", "psl2")
    assert code == 0 and json.loads(out)["match"] is True


@pytest.mark.parametrize("family", ["psl2", "etingof"])
def test_ring_file_verify_round_trip(tmp_path, capsys, family):
    for q in range(2, 51):
        path = tmp_path / f"r{q}.json"
        assert run(capsys, "ring", "--q", str(q), "--family", family, "--out", str(path))[0] == 0
        code, out, _ = run(capsys, "verify", "--ring", str(path))
        assert code == 0 and json.loads(out)["ok"], (family, q)


def test_verify_with_table(tmp_path, capsys):
    ring, table = tmp_path / "r.json", tmp_path / "t.json"
    run(capsys, "ring", "--q", "9", "--out", str(ring))
    run(capsys, "table", "--q", "9", "--out", str(table))
    code, out, _ = run(capsys, "verify", "--ring", str(ring), "--table", str(table))
    assert code == 0 and json.loads(out)["character_property"] is True
    other = tmp_path / "t2.json"
    run(capsys, "table", "--q", "8", "--out", str(other))
    assert run(capsys, "verify", "--ring", str(ring), "--table", str(other))[0] == 2


def test_verify_corrupted_ring(tmp_path, capsys):
    path = tmp_path / "corrupted.json"
    run(capsys, "ring", "--q", "6", "--out", str(path))
    data = json.loads(path.read_text())
    data["N"][1][1][3] += 1
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--ring", str(path))
    assert code == 1
    report = json.loads(out)
    assert report["ok"] is False and report["axioms"]["associative"] is False
    assert any(v[0] == "associativity" for v in report["axioms"]["violations"])


def test_table_formats(capsys):
    code, out, _ = run(capsys, "table", "--q", "5", "--format", "text")
    assert code == 0 and "E(5)" in out
    code, out, _ = run(capsys, "table", "--q", "5")
    data = json.loads(out)
    assert data["rank"] == 5 and data["class_sizes"] == ["1", "12", "12", "15", "20"]


def test_criteria_exit_codes(capsys):
    code, out, _ = run(capsys, "criteria", "--q", "6", "--only", "schur,ostrik,zero_spectrum")
    assert code == 0
    assert [r["verdict"] for r in json.loads(out)["reports"]] == ["pass"] * 3
    code, out, _ = run(capsys, "criteria", "--q", "6", "--only", "modular_divisibility")
    assert code == 1 and json.loads(out)["reports"][0]["witness"]["dim"] == 5


def test_criteria_deterministic(capsys):
    a = run(capsys, "criteria", "--q", "7", "--exhaustive-spectrum")[1]
    b = run(capsys, "criteria", "--q", "7", "--exhaustive-spectrum")[1]
    assert a == b


def test_scan_jobs_agree(tmp_path, capsys):
    one, eight = tmp_path / "1.jsonl", tmp_path / "8.jsonl"
    args = ["scan", "--q-from", "2", "--q-to", "9", "--families", "psl2,etingof"]
    run(capsys, *args, "--jobs", "1", "--out", str(one))
    run(capsys, *args, "--jobs", "8", "--out", str(eight))
    assert one.read_bytes() == eight.read_bytes()
    records = [json.loads(line) for line in one.read_text().splitlines()]
    assert len(records) == 2 * 8 * 9
    keys = {(r["q"], r["family"], r["criterion"]) for r in records}
    assert len(keys) == len(records)
    assert all(r["verdict"] in ("pass", "fail", "undecided") for r in records)
    assert all(r["elapsed_ms"] == 0 for r in records)


def test_scan_timing_flag(capsys):
    code, out, _ = run(capsys, "scan", "--q-from", "4", "--q-to", "4", "--families", "psl2",
                       "--only", "schur", "--timing")
    assert code == 0 and isinstance(json.loads(out)["elapsed_ms"], int)


def test_modsearch_cli(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "modsearch", "--max-rank", "5", "--certificate", str(cert))
    data = json.loads(out)
    assert data["certificate"] == json.loads(cert.read_text())
    assert data["certificate"]["completed"] is True
    assert code == (0 if not data["candidates"] else 1)


@pytest.mark.parametrize("argv", [
    ["ring", "--q", "1"],
    ["ring", "--q", "x"],
    ["table", "--q", "5", "--family", "sl3"],
    ["verify", "--ring", "/nonexistent/ring.json"],
    ["scan", "--q-from", "5", "--q-to", "3"],
    ["scan", "--q-from", "2", "--q-to", "3", "--jobs", "0"],
    ["scan", "--q-from", "2", "--q-to", "3", "--families", "psl3"],
    ["criteria", "--q", "5", "--only", "nope"],
    ["ring", "--q", "5", "--out", "/nonexistent/dir/r.json"],
    ["modsearch", "--max-rank", "40"],
    [],
    ["bogus"],
])
def test_usage_errors(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "verify", "--ring", str(bad))[0] == 2
    bad.write_text('{"N": 3}')
    assert run(capsys, "verify", "--ring", str(bad))[0] == 2


def test_json_stable_under_reserialization(capsys):
    for argv in (["ring", "--q", "7"], ["table", "--q", "7"], ["criteria", "--q", "7"]):
        out = run(capsys, *argv)[1]
        assert dumps(json.loads(out)) + "\n" == out
        assert not any(isinstance(v, float) for v in _leaves(json.loads(out)))


def _leaves(x):
    if isinstance(x, dict):
        for v in x.values():
            yield from _leaves(v)
    elif isinstance(x, list):
        for v in x:
            yield from _leaves(v)
    else:
        yield x
