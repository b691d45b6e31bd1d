#!/usr/bin/env python3
"""Regenerate the bundled files in src/svosa/data from the constructions and the tables.

Usage: python3 scripts/build_data.py [--out DIR]
"""
import argparse
import csv
import json
import logging
from pathlib import Path

from svosa import constructions as C
from svosa.data import lattice_to_json, table16_digest
from svosa.symbols import build_form, oddity_signature

log = logging.getLogger("build_data")

# symbols occurring in the reference tables (representation categories and lattice genera)
SYMBOLS = [
    "1", "2_II^{+2}", "2_II^{-2}", "4_1^{+1}", "4_3^{-1}", "4_5^{-1}", "4_7^{+1}", "2_2^{+2}", "2_6^{+2}",
    "2_II^{+10}", "3^{-8}", "2_II^{-10}4_II^{-2}", "2_6^{+2}4_II^{-6}", "5^{+6}", "2_II^{+6}3^{-6}",
    "7^{+5}", "2_1^{+1}4_5^{-1}8_II^{-4}", "2_II^{+4}4_II^{-2}3^{-5}", "2_II^{-2}4_II^{-2}5^{+4}",
    "2_II^{+8}4_II^{+2}", "2_II^{+4}4_0^{+6}", "2_II^{-8}3^{-3}", "2_II^{-6}5^{-3}", "2_II^{+2}4_4^{+4}3^{+4}",
]
GENERA = [
    "II_{24,0}(1)", "II_{16,0}(2_II^{+10})", "II_{12,0}(3^{-8})", "II_{12,0}(2_II^{-10}4_II^{-2})",
    "II_{10,0}(2_2^{+2}4_II^{+6})", "II_{8,0}(5^{+6})", "II_{8,0}(2_II^{+6}3^{-6})", "II_{6,0}(7^{-5})",
    "II_{6,0}(2_5^{-1}4_1^{+1}8_II^{-4})", "II_{6,0}(2_II^{+4}4_II^{-2}3^{+5})",
    "II_{4,0}(2_II^{-2}4_II^{-2}5^{+4})", "II_{0,0}(1)",
    "II_{24,0}(2_II^{+2})", "II_{16,0}(2_II^{+12})", "II_{12,0}(2_II^{+2}3^{-8})", "II_{10,0}(2_2^{+4}4^{+6})",
    "II_{8,0}(2_II^{+2}5^{+6})", "II_{8,0}(2_II^{+8}3^{-6})", "II_{6,0}(2_II^{+2}7^{-5})",
    "II_{10,0}(2_2^{+2}4_II^{-6})", "II_{6,0}(2_3^{-1}4_3^{-1}8_II^{-4})",
    "II_{16,0}(2_II^{+8})", "II_{12,0}(2_II^{-8}4_II^{-2})", "II_{8,0}(2_II^{+4}3^{-6})",
    "II_{6,0}(2_II^{+2}4_II^{-2}3^{+5})", "II_{8,0}(2_II^{+8})", "II_{8,0}(2_II^{+6}4_II^{+2})",
    "II_{8,0}(2_II^{+2}4_0^{+6})", "II_{6,0}(2_II^{-6}3^{+3})", "II_{4,0}(2_II^{-4}5^{-3})",
    "II_{4,0}(4_4^{+4}3^{+4})",
]

# c*2 mod 16 -> (c label, category, fusion, weights)
TABLE16 = [
    ("0", "C(2_II^{+2})", "Z2xZ2", ["[0]", "[1/2]", "0", "0"]),
    ("1/2", "Ising", "Ising", ["[0]", "[1/2]", "(1/16)"]),
    ("1", "C(4_1^{+1})", "Z4", ["[0]", "1/8", "[1/2]", "1/8"]),
    ("3/2", "(A1,2)", "Ising", ["[0]", "[1/2]", "(3/16)"]),
    ("2", "C(2_2^{+2})", "Z2xZ2", ["[0]", "[1/2]", "1/4", "1/4"]),
    ("5/2", "(B2,1)", "Ising", ["[0]", "[1/2]", "(5/16)"]),
    ("3", "C(4_3^{-1})", "Z4", ["[0]", "3/8", "[1/2]", "3/8"]),
    ("7/2", "(B3,1)", "Ising", ["[0]", "[1/2]", "(7/16)"]),
    ("4", "C(2_II^{-2})", "Z2xZ2", ["[0]", "[1/2]", "1/2", "1/2"]),
    ("9/2", "(B4,1)", "Ising", ["[0]", "[1/2]", "(9/16)"]),
    ("5", "C(4_5^{-1})", "Z4", ["[0]", "5/8", "[1/2]", "5/8"]),
    ("11/2", "(B5,1)", "Ising", ["[0]", "[1/2]", "(11/16)"]),
    ("6", "C(2_6^{+2})", "Z2xZ2", ["[0]", "[1/2]", "3/4", "3/4"]),
    ("13/2", "(B6,1)", "Ising", ["[0]", "[1/2]", "(13/16)"]),
    ("7", "C(4_7^{+1})", "Z4", ["[0]", "7/8", "[1/2]", "7/8"]),
    ("15/2", "(B7,1)", "Ising", ["[0]", "[1/2]", "(15/16)"]),
]

# (type, commutant, lattice genus, neighbour pair, rank triple, E, L)
GENERA_ROWS = [
    ("I", "A", "II_{24,0}(2_II^{+2})", "A/A", "24,24,24", 122, 151),
    ("I", "B", "II_{16,0}(2_II^{+12})", "B/B", "16,16,16", 71, 103),
    ("I", "C", "II_{12,0}(2_II^{+2}3^{-8})", "C/C", "12,12,12", 8, 25),
    ("I", "E", "II_{10,0}(2_2^{+4}4^{+6})", "E/E", "10,10,10", 4, 10),
    ("I", "F", "II_{8,0}(2_II^{+2}5^{+6})", "F/F", "8,8,8", 1, 5),
    ("I", "G", "II_{8,0}(2_II^{+8}3^{-6})", "G/G", "8,8,8", 1, 4),
    ("I", "H", "II_{6,0}(2_II^{+2}7^{-5})", "H/H", "6,6,6", 0, 1),
    ("IIa", "B", "II_{16,0}(2_II^{+10})", "B/B", "16,16,16", 0, 69),
    ("IIa", "D", "II_{12,0}(2_II^{-10}4_II^{-2})", "D/D", "12,12,12", 9, 52),
    ("IIa", "E", "II_{10,0}(2_2^{+2}4_II^{-6})", "E/E", "10,10,10", 0, 20),
    ("IIa", "G", "II_{8,0}(2_II^{+6}3^{-6})", "G/G", "8,8,8", 0, 6),
    ("IIa", "I", "II_{6,0}(2_3^{-1}4_3^{-1}8_II^{-4})", "I/I", "6,6,6", 0, 3),
    ("IIa", "J", "II_{6,0}(2_II^{+4}4_II^{-2}3^{+5})", "J/J", "6,6,6", 0, 6),
    ("IIa", "K", "II_{4,0}(2_II^{-2}4_II^{-2}5^{+4})", "K/K", "4,4,4", 0, 2),
    ("IIb", "B", "II_{16,0}(2_II^{+10})", "A/B", "24,16,16", 76, 0),
    ("IIb", "D", "II_{12,0}(2_II^{-10}4_II^{-2})", "A/D", "24,12,12", 15, 0),
    ("IIb", "D", "II_{12,0}(2_II^{-10}4_II^{-2})", "B/D", "16,12,12", 54, 0),
    ("IIb", "E", "II_{10,0}(2_2^{+2}4_II^{-6})", "B/E", "16,10,10", 15, 0),
    ("IIb", "G", "II_{8,0}(2_II^{+6}3^{-6})", "C/G", "12,8,8", 4, 0),
    ("IIb", "I", "II_{6,0}(2_3^{-1}4_3^{-1}8_II^{-4})", "E/I", "10,6,6", 2, 0),
    ("IIb", "J", "II_{6,0}(2_II^{+4}4_II^{-2}3^{+5})", "C/J", "12,6,6", 2, 0),
    ("IIb", "J", "II_{6,0}(2_II^{+4}4_II^{-2}3^{+5})", "G/J", "8,6,6", 2, 0),
    ("IIb", "K", "II_{4,0}(2_II^{-2}4_II^{-2}5^{+4})", "F/K", "8,4,4", 1, 0),
    ("III", "B", "II_{16,0}(2_II^{+8})", "A/A", "24,16,24", 0, 24),
    ("III", "D", "II_{12,0}(2_II^{-8}4_II^{-2})", "B/B", "16,12,16", 17, 39),
    ("III", "G", "II_{8,0}(2_II^{+4}3^{-6})", "C/C", "12,8,12", 0, 3),
    ("III", "J", "II_{6,0}(2_II^{+2}4_II^{-2}3^{+5})", "G/G", "8,6,8", 0, 2),
    ("III", "M", "II_{8,0}(2_II^{+8})", "A/A", "24,8,24", 0, 1),
    ("III", "N", "II_{8,0}(2_II^{+6}4_II^{+2})", "B/B", "16,8,16", 0, 1),
    ("III", "O", "II_{8,0}(2_II^{+2}4_0^{+6})", "D/E", "12,8,10", 10, 0),
    ("III", "O", "II_{8,0}(2_II^{+2}4_0^{+6})", "D/D", "12,8,12", 3, 11),
    ("III", "O", "II_{8,0}(2_II^{+2}4_0^{+6})", "E/E", "10,8,10", 1, 7),
    ("III", "P", "II_{6,0}(2_II^{-6}3^{+3})", "C/C", "12,6,12", 0, 1),
    ("III", "Q", "II_{4,0}(2_II^{-4}5^{-3})", "F/F", "8,4,8", 0, 1),
    ("III", "R", "II_{4,0}(4_4^{+4}3^{+4})", "J/J", "6,4,6", 0, 2),
    ("III", "S", "II_{0,0}(1)", "A/L", "24,0,0", 1, 0),
    ("III", "T", "II_{0,0}(1)", "L/L", "0,0,0", 0, 1),
]

# c, then VOSA (odd, stump, even) and lattice (odd, stump, even); '' = not listed, (n) = conditional
NUMBERS = [
    ("0", 1, 1, 1, 0, 0, 1), ("1/2", 1, 0, "", "", "", ""), ("1", 1, 0, "", 1, 0, ""),
    ("3/2", 1, 0, "", "", "", ""), ("2", 1, 0, "", 1, 0, ""), ("5/2", 1, 0, "", "", "", ""),
    ("3", 1, 0, "", 1, 0, ""), ("7/2", 1, 0, "", "", "", ""), ("4", 1, 0, "", 1, 0, ""),
    ("9/2", 1, 0, "", "", "", ""), ("5", 1, 0, "", 1, 0, ""), ("11/2", 1, 0, "", "", "", ""),
    ("6", 1, 0, "", 1, 0, ""), ("13/2", 1, 0, "", "", "", ""), ("7", 1, 0, "", 1, 0, ""),
    ("15/2", 1, 0, "", "", "", ""), ("8", 1, 0, 1, 1, 0, 1), ("17/2", 2, 0, "", "", "", ""),
    ("9", 2, 0, "", 2, 0, ""), ("19/2", 2, 0, "", "", "", ""), ("10", 2, 0, "", 2, 0, ""),
    ("21/2", 2, 0, "", "", "", ""), ("11", 2, 0, "", 2, 0, ""), ("23/2", 2, 0, "", "", "", ""),
    ("12", 3, 1, "", 3, 1, ""), ("25/2", 3, 0, "", "", "", ""), ("13", 3, 0, "", 3, 0, ""),
    ("27/2", 3, 0, "", "", "", ""), ("14", 4, 1, "", 4, 1, ""), ("29/2", 4, 0, "", "", "", ""),
    ("15", 5, 1, "", 5, 1, ""), ("31/2", 6, 1, "", "", "", ""), ("16", 7, 1, 2, 6, 1, 2),
    ("33/2", 9, 0, "", "", "", ""), ("17", 10, 1, "", 9, 1, ""), ("35/2", 11, 1, "", "", "", ""),
    ("18", 15, 4, "", 13, 4, ""), ("37/2", 16, 1, "", "", "", ""), ("19", 19, 3, "", 16, 3, ""),
    ("39/2", 23, 4, "", "", "", ""), ("20", 40, 17, "", 28, 12, ""), ("41/2", 42, 2, "", "", "", ""),
    ("21", 62, 20, "", 40, 12, ""), ("43/2", 72, 10, "", "", "", ""), ("22", 128, 56, "", 68, 28, ""),
    ("45/2", 158, 30, "", "", "", ""), ("23", 265, 107, "", 117, 49, ""),
    ("47/2", "(401)", "(136)", "", "", "", ""), ("24", "(969)", 568, "(71)", 273, 156, 24),
]

# rank-16 superalgebras with a lattice description: odd lattice, K, W1, W2, type, stump c
SMALL = [
    ("Z^16", "D16", "D16+", "D16+", "I", "0"),
    ("D12+ Z^4", "(D4D12)+", "D16+", "D16+", "I", "12"),
    ("A15++ Z", "(A1(2)A15)++", "D16+", "D16+", "I", "15"),
    ("(D8^2)++", "(D8^2)+", "D16+", "E8^2", "I", "16"),
    ("E8 Z^8", "D8E8", "E8^2", "E8^2", "I", "8"),
    ("(E7^2)+ Z^2", "(A1^2E7^2)+", "E8^2", "E8^2", "I", "14"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src" / "svosa" / "data"))
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    e8sq, swap = C.e8_squared()
    lats = [
        lattice_to_json(C.e8()), lattice_to_json(e8sq, swap), lattice_to_json(C.d_plus(16)),
        lattice_to_json(C.d8_squared_plus()), lattice_to_json(C.d24_plus()), lattice_to_json(C.leech()),
        lattice_to_json(C.odd_leech()),
    ]
    (out / "lattices.json").write_text(json.dumps(lats, indent=1) + "\n")
    log.info("lattices: %s", [x["name"] for x in lats])

    forms = {}
    for s in SYMBOLS + GENERA:
        D = build_form(s)
        forms[s] = D.to_json()
        log.info("%-42s |A|=%-6d sig=%d", s, D.size, oddity_signature(s))
    (out / "symbols.json").write_text(json.dumps(forms, indent=1) + "\n")

    rows = [{"c2": i, "c": c, "category": cat, "fusion": fus, "weights": w}
            for i, (c, cat, fus, w) in enumerate(TABLE16)]
    (out / "table16.json").write_text(json.dumps({"rows": rows, "sha256": table16_digest(rows)}, indent=1) + "\n")

    with open(out / "genera.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["type", "commutant", "lattice_genus", "neighbour_pair", "rank_triple",
                    "edges_nonloop", "edges_loop"])
        w.writerows(GENERA_ROWS)
    with open(out / "numbers.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["c", "vosa_odd", "vosa_stump", "vosa_even", "lat_odd", "lat_stump", "lat_even"])
        w.writerows(NUMBERS)
    with open(out / "small.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["odd", "K", "W1", "W2", "type", "c_stump"])
        w.writerows(SMALL)
    log.info("wrote %s", out)


if __name__ == "__main__":
    main()
