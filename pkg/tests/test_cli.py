import json
import shutil

import pytest

from svosa import data
from svosa.cli import main
from svosa.data import lattice_to_json
from svosa.lattice import make_lattice


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lattice_info(capsys):
    code, out, _ = run(capsys, "lattice", "info", "E8")
    assert code == 0
    assert "rank: 8" in out and "det: 1" in out and "roots: E8" in out and "signature mod 8: 0" in out


def test_lattice_isom(capsys, tmp_path):
    p = tmp_path / "d4.json"
    p.write_text(json.dumps(lattice_to_json(make_lattice("D", 4))))
    code, out, _ = run(capsys, "lattice", "isom", "D4", str(p))
    assert code == 0 and out.startswith("isomorphic")
    code, out, _ = run(capsys, "lattice", "isom", "D4", "A4")
    assert code == 1 and "not isomorphic" in out


def test_lattice_roots_and_split(capsys):
    code, out, _ = run(capsys, "lattice", "roots", "D16+")
    assert code == 0 and "roots: D16" in out and "count: 480" in out
    code, out, _ = run(capsys, "lattice", "split", "Z8")
    assert code == 0 and "l=8" in out


def test_errors_exit_2(capsys):
    code, _, err = run(capsys, "lattice", "info", "nonsense")
    assert code == 2 and err.startswith("error:")
    code, _, _ = run(capsys, "lattice", "isom", "E8")
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["graph", "--rank", "24"])
    assert e.value.code == 2


def test_graph_rank8(capsys):
    code, out, _ = run(capsys, "graph", "--rank", "8")
    assert code == 0 and "nodes=1 edges=1" in out and "K=D8 odd=Z^8 kind=3" in out
    code, out, err = run(capsys, "graph", "--rank", "8", "--out", "json")
    g = json.loads(out)
    assert len(g["edges"]) == 1 and g["edges"][0]["unit_vectors"] == 8 and "nodes=1" in err
    code, out, _ = run(capsys, "graph", "--rank", "8", "--out", "dot")
    assert out.startswith("graph neighbours {") and 'label="D8"' in out


def test_classify(capsys):
    code, out, err = run(capsys, "classify", "--max-rank", "9", "--check")
    assert code == 0 and "PASS" in err
    lines = out.strip().splitlines()
    assert lines[0] == "d,odd,stump,even,representatives"
    assert lines[-1] == "9,2,0,0,E8 Z; Z^9"


def test_char_commands(capsys):
    code, out, _ = run(capsys, "char", "basis", "--prec", "2", "--terms", "3")
    assert code == 0 and "98580 * q^(1/1)" in out
    code, out, _ = run(capsys, "char", "assemble", "-a", "48", "-b", "0", "-l", "0", "--check")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "char", "assemble", "-a", "0", "-b", "0", "-l", "0", "--check")
    assert code == 1 and "FAIL at component 0" in out
    code, out, _ = run(capsys, "char", "assemble", "-a", "24", "-b", "24", "-l", "1", "--out", "json")
    assert code == 0 and "Ch(a=24, b=24, l=1)" in json.loads(out)
    code, out, _ = run(capsys, "char", "s-check", "--tau", "i", "--prec", "40")
    assert code == 0 and out.count("PASS") == 2
    code, _, _ = run(capsys, "char", "from-lattice", "--prec", "2")
    assert code == 2


def test_validate(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0
    assert "total SVOSAs: 969; per-type 506/167/171/125; rank-24 odd lattices: 273" in out
    assert "FAIL" not in out


def test_tampered_data_dir(capsys, tmp_path):
    dst = tmp_path / "data"
    shutil.copytree(data.data_dir(), dst)
    p = dst / "table16.json"
    p.write_text(p.read_text().replace("Ising", "lsing", 1))
    try:
        code, _, err = run(capsys, "--data-dir", str(dst), "validate")
    finally:
        data.set_data_dir(None)
    assert code == 2 and "error" in err
