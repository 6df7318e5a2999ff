from __future__ import annotations

import csv
import io
import json

import pytest

from kneserlab import cli
from kneserlab.hypercore import Hypergraph
from kneserlab.kneser import kneser_graph


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def petersen(tmp_path, capsys):
    path = tmp_path / "petersen.json"
    code, _, _ = run(capsys, "gen", "kneser", "--n", "5", "--k", "2", "--r", "2", "--out", str(path))
    assert code == 0
    return path


def test_gen_petersen(petersen):
    data = json.loads(petersen.read_text())
    assert data["n"] == 10 and len(data["edges"]) == 15
    assert data["kneser"]["r"] == 2


def test_gen_roundtrip_hash(petersen, capsys):
    G = Hypergraph.from_dict(json.loads(petersen.read_text()))
    assert G.canonical_hash() == kneser_graph(5, 2).hypergraph.canonical_hash()
    code, out, _ = run(capsys, "chi", "--in", str(petersen))
    assert code == 0 and json.loads(out)["hash"] == G.canonical_hash()


def test_bounds_petersen(petersen, capsys):
    code, out, _ = run(capsys, "bounds", "--in", str(petersen), "--r", "2")
    d = json.loads(out)
    assert code == 0
    assert d["dolnikov_kriz"]["value"] == 3 and d["alt"]["value"] == 3 and d["chi"]["value"] == 3


def test_bounds_csv(petersen, tmp_path, capsys):
    target = tmp_path / "b.csv"
    run(capsys, "bounds", "--in", str(petersen), "--csv", str(target))
    rows = list(csv.reader(target.open()))
    assert rows[0] == ["bound", "value", "exact"]


def test_manifest_once(petersen, tmp_path, capsys):
    m = tmp_path / "m.json"
    code, _, err = run(capsys, "chi", "--in", str(petersen), "--manifest", str(m))
    man = json.loads(m.read_text())
    assert man["verb"] == "chi" and man["exit_code"] == 0 and "wall_time_s" in man
    code, _, err = run(capsys, "chi", "--in", str(petersen))
    assert len([ln for ln in err.splitlines() if ln.startswith("{")]) == 1


def test_invariants_and_ktt(tmp_path, capsys):
    path = tmp_path / "k52.json"
    run(capsys, "gen", "complete", "--n", "5", "--k", "2", "--out", str(path))
    code, out, _ = run(capsys, "invariants", "--in", str(path), "--r", "2")
    d = json.loads(out)
    assert code == 0 and d["alt_r"] == 2 and d["cd_r"] == 3
    code, out, _ = run(capsys, "ktt", "--in", str(path), "--r", "2", "--k", "2", "--exact")
    d = json.loads(out)
    assert code == 0 and d["value"] == 3 and d["exact"] == 3


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "chi")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "chi", "--in", str(bad))[0] == 1
    bad.write_text('{"n": 2, "edges": [[1, 3]]}')
    assert run(capsys, "chi", "--in", str(bad))[0] == 1
    assert run(capsys, "sample", "--in", str(tmp_path / "missing.json"), "--rho", "0.5")[0] == 1


def test_cap_exit_code(tmp_path, capsys, monkeypatch):
    path = tmp_path / "k8.json"
    run(capsys, "gen", "kneser", "--n", "8", "--k", "2", "--out", str(path))
    monkeypatch.setenv("KNESERLAB_MAX_VERTICES", "10")
    code, _, err = run(capsys, "chi", "--in", str(path))
    assert code == 2 and "cap" in err


def test_verify_altT(capsys):
    code, out, _ = run(capsys, "verify", "altT", "--max-n", "3")
    assert code == 0 and json.loads(out)["failures"] == 0


def test_verify_failure_exit_3(capsys, monkeypatch):
    from kneserlab import verify
    monkeypatch.setattr(verify, "find_tuple_bruteforce", lambda *a, **k: None)
    code, out, _ = run(capsys, "verify", "lemmain", "--n", "4", "--k", "2", "--max-colors", "1")
    assert code == 3 and json.loads(out)["failures"] > 0


def test_sample_csv(petersen, capsys):
    code, out, _ = run(capsys, "sample", "--in", str(petersen), "--rho", "0.5", "--trials", "5")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == list(cli.SAMPLE_HEADER) and len(rows) == 6


@pytest.mark.parametrize("kind,extra", [("tail", ["--d", "3"]), ("eventa", ["--q", "1", "--d", "3"])])
def test_mc_threads_byte_identical(petersen, tmp_path, capsys, kind, extra):
    outs = []
    for threads in ("1", "3"):
        target = tmp_path / f"{kind}{threads}.csv"
        code, _, _ = run(capsys, "mc", kind, "--in", str(petersen), "--rho", "0.6", "--seed", "5",
                         "--trials", "40", "--threads", threads, "--csv", str(target), *extra)
        assert code == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_mc_needs_d(petersen, capsys):
    assert run(capsys, "mc", "tail", "--in", str(petersen), "--rho", "0.5")[0] == 1


def test_margins(capsys):
    code, out, _ = run(capsys, "margins", "--condition", "SG", "--k", "1,0.7,0", "--l", "2",
                       "--rho", "0.5", "--grid", "100,1000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["n"] for r in rows] == ["100", "1000"]
    assert run(capsys, "margins", "--condition", "SG", "--k", "1,2")[0] == 1


def test_module_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "kneserlab", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == cli.__version__
