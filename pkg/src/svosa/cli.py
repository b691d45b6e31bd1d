"""svosa command line.

Exit codes: 0 success, 1 a check ran and failed, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

EXIT_OK, EXIT_CHECK, EXIT_ERROR = 0, 1, 2


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


# -- lattices ------------------------------------------------------------------------

def _load_lattice(name: str):
    from .data import get_lattice, lattice_from_json
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        return lattice_from_json(json.loads(p.read_text()))
    return get_lattice(name)


def cmd_lattice(args) -> int:
    from .discform import discriminant_form, signature_mod8
    from .isometry import is_isometric, same_class
    from .neighbour import lattice_label
    from .roots import root_system, split_unit_vectors

    L, extras = _load_lattice(args.name)
    if args.action == "info":
        _out(f"name: {L.name or args.name}")
        _out(f"rank: {L.rank}")
        _out(f"det: {L.det}")
        _out(f"parity: {'even' if L.is_even else 'odd' if L.is_integral else 'non-integral'}")
        if L.is_integral:
            _out(f"roots: {root_system(L).name()}")
            _out(f"label: {lattice_label(L)}")
        if L.is_even:
            D, _ = discriminant_form(L)
            _out(f"discriminant group: {list(D.orders) or 'trivial'}")
            _out(f"signature mod 8: {signature_mod8(D)}")
        _out(f"extra generators: {len(extras)}")
    elif args.action == "roots":
        R = root_system(L)
        _out(f"roots: {R.name()}")
        _out(f"count: {R.count}")
    elif args.action == "split":
        l, stump = split_unit_vectors(L)
        _out(f"l={l} stump rank {stump.rank}")
        if stump.rank:
            _out(f"stump: {lattice_label(stump)}")
    elif args.action == "isom":
        if not args.other:
            raise ValueError("isom needs a second lattice")
        M, _ = _load_lattice(args.other)
        iso = is_isometric(L, M)
        if iso is None:
            if same_class(L, M):
                _out("isomorphic (decided by fingerprint; no witness)")
                return EXIT_OK
            _out("not isomorphic")
            return EXIT_CHECK
        _out("isomorphic")
        _out("witness:")
        for row in iso.matrix.tolist():
            _out(" ".join(str(x) for x in row))
    return EXIT_OK


# -- graphs and classification ----------------------------------------------------------

def cmd_graph(args) -> int:
    from .data import graph_library, graph_seed
    from .neighbour import build_graph
    g = build_graph([graph_seed(args.rank)], graph_library())
    if args.out == "json":
        _out(json.dumps(g.to_json(), indent=1))
        print(g.summary(), file=sys.stderr)
    elif args.out == "dot":
        _out(g.to_dot())
        print(g.summary(), file=sys.stderr)
    else:
        _out(g.summary())
        for i, nd in enumerate(g.nodes):
            _out(f"node {i}: {nd.label}")
        for e in g.edges:
            kind = "loop" if e.is_loop else "edge"
            _out(f"{kind} {e.ends[0]}-{e.ends[1]}: K={e.K_label} odd={e.odd_label} kind={e.kind}"
                 + (" (unit vectors)" if e.unit_vectors else ""))
    return EXIT_OK


def cmd_classify(args) -> int:
    from .data import read_numbers
    from .neighbour import classify_odd_unimodular
    rows = classify_odd_unimodular(args.max_rank)
    ref = {int(r["c"]): r for r in read_numbers() if r["c"].denominator == 1}
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["d", "odd", "stump", "even", "representatives"])
    bad = []
    for r in rows:
        w.writerow([r.rank, r.odd, r.stump, r.even, "; ".join(r.representatives)])
        want = ref.get(r.rank)
        if want is None:
            continue
        got = {"lat_odd": r.odd, "lat_stump": r.stump, "lat_even": r.even}
        for k, v in got.items():
            if want[k] is not None and want[k] != v:
                bad.append(f"d={r.rank} {k}: computed {v}, table {want[k]}")
    if args.check:
        sys.stdout.flush()
        for b in bad:
            print(f"FAIL {b}", file=sys.stderr)
        if bad:
            return EXIT_CHECK
        print("PASS classification matches the bundled table", file=sys.stderr)
    return EXIT_OK


# -- characters ------------------------------------------------------------------------

def _parse_tau(s: str) -> complex:
    s = s.strip().replace(" ", "")
    if s == "i":
        return 1j
    return complex(s.replace("i", "j"))


def _print_form(label: str, ch, fmt: str, terms: int | None):
    if fmt == "json":
        return {label: ch.to_json()}
    _out(f"{label}:")
    for i, line in enumerate(ch.format(terms)):
        _out(f"  [{i}] {line}")
    return None


def cmd_char(args) -> int:
    from . import characters as chmod
    prec = Fraction(args.prec)
    blobs = {}
    status = EXIT_OK
    if args.action == "basis":
        for label, fn in (("F", chmod.build_basis_F), ("G", chmod.build_basis_G)):
            b = _print_form(label, fn(prec), args.out, args.terms)
            if b:
                blobs.update(b)
    elif args.action == "assemble":
        p = chmod.CharacterParams(args.a, args.b, args.l)
        ch = chmod.assemble_character(p, prec)
        b = _print_form(f"Ch(a={p.a}, b={p.b}, l={p.l})", ch, args.out, args.terms)
        if b:
            blobs.update(b)
        if args.check:
            ok, bad = chmod.check_nonnegative_integral(ch)
            if ok:
                _out(f"nonnegative-integral below q^{prec}: PASS")
            else:
                _out(f"nonnegative-integral: FAIL at component {bad[0]}, q^{bad[1]}, coefficient {bad[2]}")
                status = EXIT_CHECK
            for v in p.violations():
                _out(f"constraint violated: {v}")
    elif args.action == "from-lattice":
        if not args.name:
            raise ValueError("from-lattice needs a lattice name")
        L, _ = _load_lattice(args.name)
        ch = chmod.character_from_odd_lattice(L, prec)
        p = chmod.params_of(ch)
        b = _print_form(f"Ch({L.name or args.name})", ch, args.out, args.terms)
        if b:
            blobs.update(b)
        same = ch.agrees(chmod.assemble_character(p, prec))
        ok, _ = chmod.check_nonnegative_integral(ch)
        _out(f"a={p.a} b={p.b} l={p.l}; basis match: {'PASS' if same else 'FAIL'}; "
             f"nonnegative-integral: {'PASS' if ok else 'FAIL'}")
        if not (same and ok):
            status = EXIT_CHECK
    elif args.action == "s-check":
        tau = _parse_tau(args.tau)
        for label, fn in (("F", chmod.build_basis_F), ("G", chmod.build_basis_G)):
            r = chmod.s_transform_residual(fn(prec), tau)
            ok = r < args.tol
            _out(f"{label}: S-residual {r:.3e} at tau={tau}: {'PASS' if ok else 'FAIL'}")
            if not ok:
                status = EXIT_CHECK
    if blobs:
        _out(json.dumps(blobs))
    return status


# -- validation ------------------------------------------------------------------------

def cmd_validate(args) -> int:
    from .data import load_lattices, load_symbols, load_table16
    from .glue import expected_fusion, mtc_table_row, validate_count_tables
    failed = False

    def line(ok: bool, text: str):
        nonlocal failed
        failed |= not ok
        _out(f"{'PASS' if ok else 'FAIL'} {text}")

    rep = validate_count_tables()
    _out(f"total SVOSAs: {rep.total}; per-type {'/'.join(str(rep.per_type[t]) for t in ('I', 'IIa', 'IIb', 'III'))}; "
         f"rank-24 odd lattices: {rep.numbers_odd_24}")
    for label, ok, detail in rep.checks:
        line(ok, f"{label}: {detail}")
    load_table16()
    line(True, "Table of 16 categories checksum")
    rows = [mtc_table_row(c) for c in range(16)]
    line(all(r.fusion == expected_fusion(r.c2) for r in rows), "fusion types by 2c mod 16")
    line(len(load_lattices()) > 0, f"lattice bundle ({len(load_lattices())} lattices)")
    line(len(load_symbols()) > 0, f"form dictionary ({len(load_symbols())} forms)")
    return EXIT_CHECK if failed else EXIT_OK


# -- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="svosa", description="Unimodular lattices, 2-neighbours and c=24 characters.")
    p.add_argument("--data-dir", help="directory with the bundled data files")
    p.add_argument("--threads", type=int, default=1, help="bound on internal parallelism")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("lattice", help="lattice information")
    q.add_argument("action", choices=["info", "isom", "roots", "split"])
    q.add_argument("name", help="bundled name (E8, D16+, Leech, ...), A_n/D_n/E_n/Z_n, or a JSON file")
    q.add_argument("other", nargs="?")
    q.set_defaults(func=cmd_lattice)

    q = sub.add_parser("graph", help="2-neighbour graph of even unimodular lattices")
    q.add_argument("--rank", type=int, choices=[0, 8, 16], required=True)
    q.add_argument("--out", choices=["text", "dot", "json"], default="text")
    q.set_defaults(func=cmd_graph)

    q = sub.add_parser("classify", help="odd unimodular lattices by rank (CSV)")
    q.add_argument("--max-rank", type=int, default=16, choices=range(17), metavar="N")
    q.add_argument("--check", action="store_true", help="compare with the bundled table")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("char", help="c=24 characters")
    q.add_argument("action", choices=["basis", "assemble", "from-lattice", "s-check"])
    q.add_argument("name", nargs="?")
    q.add_argument("--prec", default="3")
    q.add_argument("-a", type=int, default=0)
    q.add_argument("-b", type=int, default=0)
    q.add_argument("-l", type=int, default=0)
    q.add_argument("--check", action="store_true")
    q.add_argument("--tau", default="i")
    q.add_argument("--tol", type=float, default=1e-6)
    q.add_argument("--terms", type=int, default=None, help="terms per component to print")
    q.add_argument("--out", choices=["text", "json"], default="text")
    q.set_defaults(func=cmd_char)

    q = sub.add_parser("validate", help="check the bundled tables")
    q.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s", stream=sys.stderr)
    if args.threads < 1:
        parser.error("--threads must be positive")
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS"):
        os.environ.setdefault(var, str(args.threads))
    from .data import set_data_dir
    if args.data_dir:
        set_data_dir(args.data_dir)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
