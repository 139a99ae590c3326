import io
import contextlib
import json

import pytest

from hhk.cli import main


def run(argv):
    buf = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, buf.getvalue(), err.getvalue()


def test_corpus_list_and_emit(tmp_path):
    code, out, _ = run(["corpus", "list"])
    assert code == 0
    doc = json.loads(out)
    assert "f2c2" in doc["algebras"] and "qx2" in doc["algebras"]
    assert "delta1" in doc["simplicialSets"]
    path = tmp_path / "f2c2.json"
    code, out, _ = run(["corpus", "emit", "f2c2", "--out", str(path)])
    assert code == 0
    emitted = json.loads(path.read_text())
    assert emitted["name"] == "kC2"
    # emitted file validates under verify algebra
    code, out, _ = run(["verify", "algebra", "--algebra", str(path)])
    assert code == 0 and json.loads(out)["verdict"] == "PASS"


def test_corpus_emit_qx2_maxdeg():
    code, out, _ = run(["corpus", "emit", "qx2", "--maxdeg", "24"])
    assert code == 0
    doc = json.loads(out)
    assert doc["locality"]["locallyFinite"]["gMin"] == 2
    assert doc["locality"]["locallyFinite"]["completeThrough"] == 24


def test_corpus_emit_s3q_strict():
    code, out, _ = run(["corpus", "emit", "s3q"])
    doc = json.loads(out)
    assert doc["hopf"]["strict"] is True


def test_compute_hh_f2c2(tmp_path):
    code, out, _ = run(["compute", "hh", "--algebra", "f2c2",
                        "--cutoff", "6", "--window", "0:4"])
    assert code == 0
    doc = json.loads(out)
    assert [r["dim"] for r in doc["results"]["betti"]] == [2, 2, 2, 2, 2]


def test_compute_exit_codes():
    code, _, _ = run(["compute", "hh", "--algebra", "does-not-exist.json"])
    assert code == 2
    code, _, _ = run(["compute", "tor", "--left", "k", "--right", "k",
                      "--algebra", "f2c2", "--cutoff", "4", "--window", "0:6"])
    assert code == 3
    code, _, _ = run(["compute", "tor", "--left", "k", "--right", "k",
                      "--algebra", "f2c2", "--cutoff", "4", "--window", "0:6",
                      "--untrusted"])
    assert code == 0


def test_verify_fail_exit_code():
    code, out, _ = run(["verify", "bv", "--algebra", "qx2broken",
                        "--dimension", "3", "--window", "-4:8", "--cutoff", "6"])
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "FAIL"
    assert doc["results"]["identities"]["failures"]


def test_formats():
    for fmt in ("json", "csv", "table"):
        code, out, _ = run(["compute", "hh", "--algebra", "f2c2",
                            "--cutoff", "5", "--window", "0:3",
                            "--format", fmt])
        assert code == 0 and out


def test_reports_byte_identical_across_runs_and_threads():
    base = ["compute", "hh", "--algebra", "qx2", "--cutoff", "6",
            "--window", "0:9"]
    _, out1, _ = run(base + ["--threads", "1"])
    _, out2, _ = run(base + ["--threads", "8"])
    _, out3, _ = run(base + ["--threads", "1"])
    assert out1 == out3
    doc1 = json.loads(out1)
    doc2 = json.loads(out2)
    assert doc1["results"] == doc2["results"]

    basev = ["verify", "gerstenhaber", "--algebra", "f2c2", "--cutoff", "6",
             "--window", "0:5", "--cochain-window", "-5:0",
             "--degree-bound", "3"]
    _, v1, _ = run(basev + ["--threads", "1"])
    _, v2, _ = run(basev + ["--threads", "8"])
    assert json.loads(v1)["results"] == json.loads(v2)["results"]
    _, v3, _ = run(basev + ["--threads", "1"])
    assert v1 == v3


def test_group_cohomology_command():
    code, out, _ = run(["compute", "group-cohomology", "--algebra", "s3q",
                        "--coefficients", "ad", "--cutoff", "3",
                        "--window", "-2:0"])
    assert code == 0
    doc = json.loads(out)
    dims = {r["degree"]: r["dim"] for r in doc["results"]["betti"]}
    assert dims[0] == 3  # invariants of the conjugation action


def test_simplicial_emit_roundtrip(tmp_path):
    path = tmp_path / "d1.json"
    code, _, _ = run(["corpus", "emit", "delta1", "--out", str(path)])
    assert code == 0
    code, out, _ = run(["verify", "ez-aw", "--x", str(path), "--y", str(path)])
    assert code == 0 and json.loads(out)["verdict"] == "PASS"
