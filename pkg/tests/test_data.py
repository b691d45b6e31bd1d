import json
import shutil

import pytest

from svosa import data
from svosa.data import DataError


@pytest.fixture
def tmp_data(tmp_path):
    src = data.data_dir()
    dst = tmp_path / "data"
    shutil.copytree(src, dst)
    data.set_data_dir(dst)
    yield dst
    data.set_data_dir(None)


def test_bundle_loads():
    libs = data.load_lattices()
    assert {"E8", "E8^2", "D16+", "D24+", "Leech", "O24"} <= set(libs)
    for L, ex in libs.values():
        assert L.is_integral
    assert len(data.load_table16()) == 16
    assert data.symbol_form("2_II^+2").size == 4


def test_lookup_patterns():
    assert data.get_lattice("Z24")[0].rank == 24
    assert data.get_lattice("e8")[0].det == 1
    assert data.get_lattice("0")[0].rank == 0
    with pytest.raises(DataError):
        data.get_lattice("X9")


def test_table16_tamper_detected(tmp_data):
    p = tmp_data / "table16.json"
    obj = json.loads(p.read_text())
    obj["rows"][3]["category"] = "something else"
    p.write_text(json.dumps(obj))
    with pytest.raises(DataError):
        data.load_table16()


def test_bad_extra_generator_rejected(tmp_data):
    p = tmp_data / "lattices.json"
    objs = json.loads(p.read_text())
    e = next(o for o in objs if o["extra_generators"])
    e["extra_generators"][0][0][0] = "5"
    p.write_text(json.dumps(objs))
    with pytest.raises(DataError):
        data.load_lattices()


def test_genera_csv_errors(tmp_path):
    p = tmp_path / "g.csv"
    p.write_text(",".join(data.GENERA_FIELDS) + "\n")
    with pytest.raises(DataError):
        data.read_genera(p)
    p.write_text(",".join(data.GENERA_FIELDS) + "\nI,A,x,A/A,\"1,1,1\",seven,3\n")
    with pytest.raises(DataError):
        data.read_genera(p)
    p.write_text(",".join(data.GENERA_FIELDS) + "\nIV,A,x,A/A,\"1,1,1\",1,3\n")
    with pytest.raises(DataError):
        data.read_genera(p)


def test_numbers_conditional_values():
    rows = {str(r["c"]): r for r in data.read_numbers()}
    assert rows["24"]["vosa_odd"] == 969 and rows["24"]["vosa_odd_conditional"]
    assert rows["24"]["lat_odd"] == 273 and not rows["24"]["lat_odd_conditional"]
    assert rows["1/2"]["lat_odd"] is None
