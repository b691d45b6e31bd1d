#!/usr/bin/env python3
"""Characters of a few rank-24 odd unimodular lattices against the (a, b, l) basis.

Usage: python3 scripts/rank24_characters.py [--prec P]
"""
import argparse
import time
from fractions import Fraction

from svosa.characters import (abl_from_dims, assemble_character, character_from_odd_lattice,
                              check_nonnegative_integral, params_of)
from svosa.data import get_lattice
from svosa.glue import lattice_extensions
from svosa.lattice import direct_sum, even_sublattice, make_lattice
from svosa.neighbour import two_neighbour
from svosa.roots import root_system


def lattices():
    yield "Z^24", make_lattice("Z", 24)
    yield "E8 + Z^16", direct_sum(get_lattice("E8")[0], make_lattice("Z", 16))
    M, _ = get_lattice("D24+")
    yield "neighbour of D24+", two_neighbour(M, [int(x) for x in M.from_ambient([2] + [0] * 23)]).Lodd
    M, _ = get_lattice("Leech")
    yield "odd Leech", two_neighbour(M, [int(x) for x in M.from_ambient([8] + [0] * 23)]).Lodd


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prec", default="3", help="exponent cutoff of the q-expansions")
    args = ap.parse_args()
    prec = Fraction(args.prec)
    for name, L in lattices():
        t = time.perf_counter()
        ch = character_from_odd_lattice(L, prec)
        p = params_of(ch)
        K, _ = even_sublattice(L)
        _, ext = lattice_extensions(K)
        dims = [24 + root_system(X).count for X in (K,) + ext.lattices[:2]]
        want = abl_from_dims(*dims)
        same = ch.agrees(assemble_character(p, prec)) and p.family() == want.family()
        ok, _ = check_nonnegative_integral(ch)
        print(f"{name}: (a, b, l) = ({p.a}, {p.b}, {p.l}); dims {dims}; "
              f"basis match {same}; nonnegative {ok}; {time.perf_counter() - t:.1f} s")
        for i, line in enumerate(ch.format(4)):
            print(f"  [{i}] {line}")


if __name__ == "__main__":
    main()
