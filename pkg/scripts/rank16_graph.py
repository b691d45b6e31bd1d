#!/usr/bin/env python3
"""Build the rank-16 neighbour graph, list its edges and the inner-automorphism orbits.

Usage: python3 scripts/rank16_graph.py [--dot FILE]
"""
import argparse
import time

from svosa.data import graph_library, graph_seed
from svosa.neighbour import build_graph, classify_inner_lattice_node, lattice_label


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dot", help="also write the graph in DOT format")
    args = ap.parse_args()
    t = time.perf_counter()
    g = build_graph([graph_seed(16)], graph_library())
    print(f"{g.summary()} in {time.perf_counter() - t:.1f} s")
    for e in g.edges:
        a, b = (g.nodes[i].label for i in e.ends)
        sizes = ", ".join(str(s) for _, _, s in e.classes)
        print(f"  {a} -- {b}: K = {e.K_label}, odd = {e.odd_label}, kind {e.kind}, orbit sizes {sizes}")
    for nd in g.nodes:
        orbs = classify_inner_lattice_node(nd.lattice, nd.gens)
        print(f"{nd.label}: {len(orbs)} inner orbits")
        for o in orbs:
            print(f"  size {o.size}: L^h = {lattice_label(o.Lh)}, neighbour {lattice_label(o.neighbour)}")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(g.to_dot())


if __name__ == "__main__":
    main()
