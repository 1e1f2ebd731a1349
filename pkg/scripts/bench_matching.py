#!/usr/bin/env python3
"""Time the layered bipartite matcher across a range of graph sizes.

Prints size, phase count and wall time per configuration, plus the phase
bound 2*sqrt(n) + 2 the layered algorithm must stay under.
"""

import argparse
import math
import random
import sys
import time

from mgg.graphs import Bipartition, Graph
from mgg.matching import max_matching_bipartite_with_phases


def random_bipartite(n: int, m: int, seed: int) -> tuple[Graph, Bipartition]:
    rng = random.Random(seed)
    half = n // 2
    if half == 0 or m > half * (n - half):
        raise SystemExit(f"cannot place {m} edges on a {half}x{n - half} bipartition")
    edges = set()
    while len(edges) < m:
        edges.add((rng.randrange(half), half + rng.randrange(n - half)))
    g = Graph(n, tuple(edges), directed=False)
    return g, Bipartition(frozenset(range(half)), frozenset(range(half, n)))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument(
        "--sizes",
        default="2000:10000,20000:100000,40000:200000",
        help="comma-separated n:m pairs",
    )
    args = parser.parse_args()

    print(f"{'n':>7} {'m':>8} {'size':>7} {'phases':>7} {'bound':>6} {'time':>9}")
    for pair in args.sizes.split(","):
        n, m = (int(x) for x in pair.split(":"))
        g, b = random_bipartite(n, m, args.seed)
        t0 = time.perf_counter()
        matching, phases = max_matching_bipartite_with_phases(g, b)
        dt = time.perf_counter() - t0
        bound = 2 * math.isqrt(n) + 2
        print(f"{n:>7} {m:>8} {matching.size:>7} {phases:>7} {bound:>6} {dt:>8.3f}s")
        if phases > bound:
            print("phase bound exceeded", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
