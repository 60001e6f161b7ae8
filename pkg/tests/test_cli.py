import json
import subprocess
import sys
from io import StringIO

import pytest

from tensor_melon.bubbles import enumerate_bubbles
from tensor_melon.cli import run
from tensor_melon.graph import build, dipole


def call(*argv):
    out = StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def dipole_file(tmp_path):
    return write_json(tmp_path / "dipole.json", dipole(4).to_json())


def test_unknown_subcommand():
    assert call("frobnicate")[0] == 2


def test_missing_flag():
    assert call("degree")[0] == 2


def test_degree_dipole(dipole_file):
    code, text = call("degree", "--input", dipole_file)
    assert code == 0
    data = json.loads(text)
    assert data["degree"] == 0
    assert data["amplitude_exponent"] == "3/1"
    assert len(data["jackets"]) == 3


def test_missing_file(tmp_path):
    assert call("degree", "--input", str(tmp_path / "nope.json"))[0] == 1


def test_bad_graph(tmp_path):
    path = write_json(tmp_path / "bad.json", {"colors": 2, "p": 2, "matchings": [[0, 1], [1, 1]]})
    assert call("degree", "--input", path)[0] == 1


def test_bubbles():
    code, text = call("bubbles", "--rank", "3", "--vertices", "4")
    assert code == 0
    rows = [json.loads(line) for line in text.splitlines()]
    assert len(rows) == 3
    assert all(r["degree"] == 0 and r["p"] == 2 for r in rows)


def test_bubbles_melonic_only():
    all_rows = call("bubbles", "--rank", "3", "--vertices", "6")[1].splitlines()
    melonic = call("bubbles", "--rank", "3", "--vertices", "6", "--melonic-only")[1].splitlines()
    assert len(all_rows) == 7
    # the one degree-one bubble drops out
    assert len(melonic) == 6
    assert call("bubbles", "--rank", "4", "--vertices", "6", "--melonic-only")[0] == 0


def test_bubbles_odd_vertices():
    assert call("bubbles", "--rank", "3", "--vertices", "3")[0] == 1


def test_jackets(dipole_file):
    text = call("jackets", "--input", dipole_file)[1]
    assert [json.loads(r)["genus"] for r in text.splitlines()] == [0, 0, 0]
    text = call("jackets", "--rank", "4")[1]
    assert len(text.splitlines()) == 12
    assert call("jackets")[0] == 1


def test_melonic(dipole_file, tmp_path):
    data = json.loads(call("melonic", "--input", dipole_file)[1])
    assert data["melonic"] and data["contraction_sequence"] == [] and data["tree"] == "()"
    bad = build(4, 3, [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1]])
    path = write_json(tmp_path / "bad.json", bad.to_json())
    assert call("melonic", "--input", path)[1].strip() == "non-melonic"


def test_melons():
    text = call("melons", "--rank", "3", "--insertions", "2")[1]
    rows = [json.loads(r) for r in text.splitlines()]
    assert len(rows) == 10
    assert all(r["p"] == 3 for r in rows)


def test_series(tmp_path):
    names = []
    for k, b in enumerate(enumerate_bubbles(3, 2)):
        names.append(f"q{k}.json")
        write_json(tmp_path / names[-1], b.to_json())
    cpath = write_json(tmp_path / "c.json", {names[0]: "1/2"})
    code, text = call("series", "--rank", "3", "--couplings", cpath, "--order", "1")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "order\texponent\tcoefficient"
    assert lines[1:] == ["q0.json\t2/1\t-1/2", "q0.json\t3/1\t-1/2"]
    assert call("series", "--rank", "4", "--couplings", cpath, "--order", "1")[0] == 1


def test_bracket(tmp_path):
    t1 = tmp_path / "t1.txt"
    t2 = tmp_path / "t2.txt"
    t1.write_text("(1:())")
    t2.write_text("()")
    assert call("bracket", "--t1", str(t1), "--t2", str(t2))[1] == "1\t(1:())\n"
    assert call("bracket", "--t1", str(t1), "--t2", str(t1))[1] == "0\n"
    t2.write_text("(2:())")
    assert call("bracket", "--t1", str(t1), "--t2", str(t2))[1] == "1\t(1:(2:()))\n-1\t(2:(1:()))\n"


def test_jacobi():
    code, text = call("jacobi", "--rank", "3", "--trials", "10", "--seed", "1")
    assert code == 0
    assert text.splitlines() == ["defect: 0"] * 10


def test_jacobi_threads(monkeypatch):
    monkeypatch.setenv("TENSOR_MELON_THREADS", "2")
    assert call("jacobi", "--rank", "2", "--trials", "4", "--max-vertices", "4")[1] == "defect: 0\n" * 4


def test_verify_amplitude(dipole_file):
    data = json.loads(call("verify-amplitude", "--input", dipole_file, "--N", "3")[1])
    assert data["holds"] and data["theorem_exponent"] == "3/1" == data["literal_exponent"]


def test_moment(tmp_path):
    q = enumerate_bubbles(3, 2)[0]
    path = write_json(tmp_path / "q.json", q.to_json())
    assert call("moment", "--rank", "3", "--N", "2", "--bubbles", path)[1] == "3/1\n"
    assert call("moment", "--rank", "3", "--N", "2")[1] == "1/1\n"


def test_deterministic(dipole_file):
    for argv in (["melons", "--rank", "3", "--insertions", "2"],
                 ["jacobi", "--rank", "3", "--trials", "3", "--seed", "5"],
                 ["degree", "--input", dipole_file]):
        assert call(*argv) == call(*argv)


def test_module_entry_point(dipole_file):
    proc = subprocess.run([sys.executable, "-m", "tensor_melon", "degree", "--input", dipole_file],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["degree"] == 0
    proc = subprocess.run([sys.executable, "-m", "tensor_melon", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2
