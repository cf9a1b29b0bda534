#!/usr/bin/env python3
"""Two-regime spanners in action.

Builds the hybrid construction over a small grid of random graphs and shows
that adjacent pairs stay within the classical 2k-1 multiplicative budget
while every non-adjacent pair beats it with a plain factor-k guarantee.

Usage: python demos/hybrid_stretch.py
"""

import time

from spanlab import build_hybrid, hybrid_spec, random_graph, size_report, verify_spanner


def main():
    print("=" * 74)
    print("  HYBRID SPANNERS: 2k-1 for neighbors, k for everyone else")
    print("=" * 74)
    header = (
        f"  {'n':>5} {'k':>3} {'seed':>5} {'m':>6} {'|H|':>6} {'kept%':>6} "
        f"{'adj max':>8} {'bound':>6} {'far max':>8} {'bound':>6} {'ratio':>7} {'sec':>6}"
    )
    print(header)
    print("  " + "-" * (len(header) - 2))

    for n in (128, 256):
        p = 8.0 / (n - 1)
        for k in (2, 3):
            for seed in (1, 2):
                g = random_graph(n, p, seed)
                t0 = time.perf_counter()
                sp = build_hybrid(g, k, seed)
                rep = verify_spanner(g, sp, None, hybrid_spec(k))
                dt = time.perf_counter() - t0
                adj = rep.classes["adjacent"]
                far = rep.classes["nonadjacent"]
                ratio = size_report(sp, "hybrid", n, k=k)
                assert rep.ok, "stretch contract violated"
                print(
                    f"  {n:>5} {k:>3} {seed:>5} {g.m:>6} {sp.size:>6} "
                    f"{100 * sp.size / g.m:>5.1f}% "
                    f"{adj.max_mult:>8.2f} {2 * k - 1:>6} "
                    f"{far.max_mult:>8.2f} {'k*d':>6} {ratio:>7.3f} {dt:>6.2f}"
                )

    print()
    print("  'adj max' is the worst multiplicative stretch over graph edges;")
    print("  'far max' the worst over non-adjacent pairs (their bound is k).")
    print("  Every row verified exactly: zero violations.")


if __name__ == "__main__":
    main()
