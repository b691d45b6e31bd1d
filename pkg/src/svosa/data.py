"""Bundled data: lattices, extra automorphisms, form dictionary and reference tables.

Everything is validated when loaded. The directory can be overridden with
the SVOSA_DATA_DIR environment variable or `set_data_dir`.
"""
from __future__ import annotations

import csv
import hashlib
import json
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from . import linalg as la
from .discform import DiscriminantForm, FormError
from .lattice import Ambient, Lattice, LatticeError, zero_lattice

_OVERRIDE: Path | None = None


class DataError(ValueError):
    pass


def set_data_dir(path) -> None:
    global _OVERRIDE
    _OVERRIDE = Path(path) if path else None
    _clear()


def data_dir() -> Path:
    if _OVERRIDE is not None:
        return _OVERRIDE
    env = os.environ.get("SVOSA_DATA_DIR")
    return Path(env) if env else Path(__file__).parent / "data"


def _clear():
    for f in (load_lattices, load_symbols, load_table16):
        f.cache_clear()


# -- lattices ----------------------------------------------------------------

def _frac(s) -> Fraction:
    return Fraction(s) if not isinstance(s, str) else Fraction(s)


def lattice_to_json(L: Lattice, extras=()) -> dict:
    G, d = la.scale_to_int([list(r) for r in L.gram])
    obj = {"name": L.name, "rank": L.rank, "gram": G, "denom": d,
           "extra_generators": [[[str(Fraction(x)) for x in r] for r in g] for g in extras]}
    if L.ambient is not None:
        B, bd = la.scale_to_int([list(r) for r in L.ambient.basis])
        obj["ambient"] = {"basis": B, "denom": bd, "scale": str(L.ambient.scale)}
    return obj


def lattice_from_json(obj: dict) -> tuple[Lattice, list]:
    d = int(obj.get("denom", 1))
    G = [[Fraction(int(x), d) for x in r] for r in obj["gram"]]
    if len(G) != int(obj.get("rank", len(G))):
        raise DataError(f"rank mismatch in {obj.get('name')}")
    amb = None
    if "ambient" in obj:
        a = obj["ambient"]
        bd = int(a.get("denom", 1))
        amb = Ambient([[Fraction(int(x), bd) for x in r] for r in a["basis"]], _frac(a.get("scale", "1")))
    L = Lattice(G, obj.get("name"), amb)
    extras = [[[_frac(x) for x in r] for r in g] for g in obj.get("extra_generators", [])]
    from .lattice import is_isometry_matrix
    for g in extras:
        if not all(x.denominator == 1 for r in g for x in r) or not is_isometry_matrix(g, L.gram, L.gram):
            raise DataError(f"extra generator of {L.name} is not an automorphism")
    return L, extras


@lru_cache(maxsize=None)
def load_lattices() -> dict:
    path = data_dir() / "lattices.json"
    if not path.exists():
        raise DataError(f"missing data file {path}")
    out = {}
    for obj in json.loads(path.read_text()):
        try:
            out[obj["name"]] = lattice_from_json(obj)
        except (LatticeError, KeyError) as e:
            raise DataError(f"invalid lattice entry {obj.get('name')}: {e}") from e
    return out


_ALIASES = {"E8E8": "E8^2", "E8xE8": "E8^2", "E8^2": "E8^2", "D16+": "D16+", "D8^2+": "(D8^2)+",
            "(D8^2)+": "(D8^2)+", "D24+": "D24+", "LEECH": "Leech", "O24": "O24"}


def lattice_names() -> list[str]:
    return sorted(load_lattices())


def get_lattice(name: str) -> tuple[Lattice, list]:
    """Bundled lattice or a standard one (A_n, D_n, E_n, Z_n, 'Z^n', '0')."""
    import re
    libs = load_lattices()
    key = _ALIASES.get(name.upper(), _ALIASES.get(name, name))
    if key in libs:
        return libs[key]
    if name in ("0", "zero"):
        return zero_lattice(), []
    m = re.fullmatch(r"([ADEZadez])\^?(\d+)", name)
    if m:
        from .lattice import make_lattice
        return make_lattice(m.group(1), int(m.group(2))), []
    raise DataError(f"unknown lattice {name!r}")


def graph_seed(rank: int):
    from .neighbour import LibraryEntry
    name = {0: "0", 8: "E8", 16: "E8^2", 24: "D24+"}.get(rank)
    if name is None:
        raise DataError(f"no seed for rank {rank}")
    L, ex = get_lattice(name)
    return LibraryEntry(L, tuple(ex))


def graph_library() -> list:
    from .neighbour import LibraryEntry
    return [LibraryEntry(L, tuple(ex)) for L, ex in load_lattices().values()
            if L.is_even and L.det == 1]


# -- discriminant forms ----------------------------------------------------------

@lru_cache(maxsize=None)
def load_symbols() -> dict:
    path = data_dir() / "symbols.json"
    if not path.exists():
        raise DataError(f"missing data file {path}")
    out = {}
    for name, obj in json.loads(path.read_text()).items():
        try:
            D = DiscriminantForm.from_json(obj, name)
        except FormError as e:
            raise DataError(f"invalid form {name}: {e}") from e
        if not D.is_nondegenerate():
            raise DataError(f"form {name} is degenerate")
        out[name] = D
    return out


def symbol_form(name: str) -> DiscriminantForm:
    forms = load_symbols()
    if name in forms:
        return forms[name]
    key = name.replace("{", "").replace("}", "")
    for k, D in forms.items():
        if k.replace("{", "").replace("}", "") == key:
            return D
    raise DataError(f"symbol {name!r} is not in the dictionary")


# -- tables ---------------------------------------------------------------------

TABLE16_SHA256 = None  # filled in by scripts/build_data.py, checked on load


def table16_digest(rows: list) -> str:
    blob = json.dumps(rows, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@lru_cache(maxsize=None)
def load_table16() -> list:
    path = data_dir() / "table16.json"
    if not path.exists():
        raise DataError(f"missing data file {path}")
    obj = json.loads(path.read_text())
    rows = obj["rows"]
    if len(rows) != 16 or table16_digest(rows) != obj["sha256"]:
        raise DataError("table16.json fails its checksum")
    return rows


GENERA_FIELDS = ["type", "commutant", "lattice_genus", "neighbour_pair", "rank_triple",
                 "edges_nonloop", "edges_loop"]


def read_genera(path=None) -> list[dict]:
    path = Path(path) if path else data_dir() / "genera.csv"
    if not path.exists():
        raise DataError(f"missing data file {path}")
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise DataError(f"{path} has no rows")
    for i, r in enumerate(rows, start=2):
        if set(GENERA_FIELDS) - set(r):
            raise DataError(f"{path}: missing columns")
        try:
            r["edges_nonloop"] = int(r["edges_nonloop"])
            r["edges_loop"] = int(r["edges_loop"])
        except (TypeError, ValueError) as e:
            raise DataError(f"{path} line {i}: bad edge count {r}") from e
        if r["type"] not in ("I", "IIa", "IIb", "III"):
            raise DataError(f"{path} line {i}: bad type {r['type']!r}")
    return rows


NUMBERS_FIELDS = ["c", "vosa_odd", "vosa_stump", "vosa_even", "lat_odd", "lat_stump", "lat_even"]


def read_numbers(path=None) -> list[dict]:
    path = Path(path) if path else data_dir() / "numbers.csv"
    if not path.exists():
        raise DataError(f"missing data file {path}")
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise DataError(f"{path} has no rows")
    out = []
    for r in rows:
        rr = {"c": Fraction(r["c"])}
        for k in NUMBERS_FIELDS[1:]:
            v = r[k].strip()
            rr[k] = None if v == "" else int(v.strip("()"))
            rr[k + "_conditional"] = v.startswith("(")
        out.append(rr)
    return out


SMALL_FIELDS = ["odd", "K", "W1", "W2", "type", "c_stump"]


def read_small(path=None) -> list[dict]:
    """Rank-16 odd lattices with their K, even neighbours and glueing type."""
    path = Path(path) if path else data_dir() / "small.csv"
    if not path.exists():
        raise DataError(f"missing data file {path}")
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or set(SMALL_FIELDS) - set(rows[0]):
        raise DataError(f"{path}: empty or missing columns")
    for r in rows:
        r["c_stump"] = int(r["c_stump"])
    return rows
