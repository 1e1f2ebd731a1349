#!/usr/bin/env python3
"""Run every reduction's randomized cross-check grid and print a summary.

Each reduction is exercised on seeded random instances; source and target are
solved exhaustively under their claimed conventions and compared.  Exits
nonzero if any completed trial disagrees.
"""

import argparse
import sys
import time

from mgg.arena import run_reduction_grid

GRIDS = {
    # name: (n, m, wmax, trials, loops, all_starts)
    "vgeo-dir": (6, 10, 1, 500, "none", True),
    "vgeo-undir": (4, 4, 1, 100, "none", False),
    "egeo-dir": (5, 8, 1, 300, "none", False),
    "egeo-undir": (5, 8, 1, 300, "none", False),
    "nimg-rm": (4, 4, 1, 200, "none", False),
    "nimg-mr": (4, 4, 2, 300, "free", False),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=10_000_000)
    parser.add_argument("--scale", type=float, default=1.0,
                        help="multiply all trial counts")
    args = parser.parse_args()

    failures = 0
    print(f"{'reduction':<12} {'checks':>7} {'agree':>6} {'budget':>7} {'time':>8}")
    for name, (n, m, wmax, trials, loops, all_starts) in GRIDS.items():
        t0 = time.perf_counter()
        agree = disagree = exhausted = 0
        grid = run_reduction_grid(
            name,
            n=n,
            m=m,
            weight_bound=wmax,
            trials=max(1, int(trials * args.scale)),
            master_seed=args.seed,
            budget=args.budget,
            loops=loops,
            all_starts=all_starts,
        )
        for report, pos, _ in grid:
            if report.agree is True:
                agree += 1
            elif report.agree is False:
                disagree += 1
                print(
                    f"  DISAGREEMENT {name} seed={report.seed} "
                    f"start={pos.current} src={report.source_outcome} "
                    f"tgt={report.target_outcome}"
                )
            else:
                exhausted += 1
        dt = time.perf_counter() - t0
        total = agree + disagree + exhausted
        print(f"{name:<12} {total:>7} {agree:>6} {exhausted:>7} {dt:>7.1f}s")
        failures += disagree
    if failures:
        print(f"{failures} disagreement(s) found", file=sys.stderr)
        return 3
    print("all reductions agree")
    return 0


if __name__ == "__main__":
    sys.exit(main())
