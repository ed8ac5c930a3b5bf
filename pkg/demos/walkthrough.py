"""Walk through the library on one random B2 instance.

    python3 demos/walkthrough.py [n] [seed]

Generates an instance, splits it into outerstring and co-comparability
parts, checks every certificate, then compares each approximation with the
exact answer when the instance is small enough for brute force.
"""
import sys

from vpgsplit.approx import (
    approx_clique_cover,
    approx_coloring,
    approx_weighted_clique,
    approx_wis,
    outerstring_decomposition,
    wis_solver_for,
)
from vpgsplit.decompose import decompose_b2_full, verify_decomposition
from vpgsplit.generate import InstanceSpec, generate_instance
from vpgsplit.graph import CLIQUE, COLORING, COVER, WIS, CapExceeded, brute_force_solve, build_intersection_graph


def show_decomposition(title, dec, rep, G):
    check = verify_decomposition(dec, rep, G)
    print(f"{title}: {len(dec.parts)} parts (bound {dec.bound:.2f}), certificates ok: {check.ok}")
    for k, part in enumerate(dec.parts[:6]):
        print(f"  part {k}: {part.cert.kind:<18} {len(part.members)} objects")
    if len(dec.parts) > 6:
        print(f"  ... {len(dec.parts) - 6} more")


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 7
    rep = generate_instance(InstanceSpec("b2", n, weights=(1, 9), seed=seed))
    G = build_intersection_graph(rep)
    print(f"instance: {G.n} curves, {len(G.edges())} crossings")
    print()

    show_decomposition("outerstring split", outerstring_decomposition(rep), rep, G)
    show_decomposition("co-comparability split", decompose_b2_full(rep), rep, G)
    print()

    runs = [
        (WIS, approx_wis(rep, G)),
        (CLIQUE, approx_weighted_clique(rep, G=G)),
        (COLORING, approx_coloring(G, wis_solver_for(rep))),
        (COVER, approx_clique_cover(rep, G=G)),
    ]
    for problem, res in runs:
        line = f"{problem:<12} value {str(res.solution.value):>4}  parts/classes {res.k:>3}  factor {res.formula}"
        try:
            opt = brute_force_solve(G, problem)
            line += f"  exact {opt.value}"
        except CapExceeded:
            line += "  exact: too large for brute force"
        print(line)


if __name__ == "__main__":
    main()
