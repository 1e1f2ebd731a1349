"""Command-line front end: solve, reduce, verify, bench, play.

Exit codes are a stable contract: 0 solved/agree, 1 input error, 2 budget
exhausted or indeterminate, 3 disagreement found, 4 requested method not
applicable, 5 infeasible grid.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from .arena import mix_seed, run_reduction_grid, verify_strategy, write_counterexample
from .graphs import Bipartition, Graph
from .kernel import (
    EGEO,
    NIMG_MR,
    NIMG_RM,
    VGEO,
    Convention,
    IllegalMoveError,
    Move,
    Position,
    apply_move,
    legal_moves,
)
from .matching import max_matching_bipartite_with_phases
from .polysolve import (
    NotApplicable,
    solve_bipartite_rm_misere,
    solve_loops_rm_misere,
    solve_vgeo_undirected_normal,
    solve_weight1_rm_misere,
)
from .posfile import PositionParseError, read_position, write_position
from .reductions import REDUCTIONS
from .search import DEFAULT_BUDGET, Outcome, Policy, solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_DISAGREE = 3
EXIT_NOT_APPLICABLE = 4
EXIT_INFEASIBLE = 5

_RM_SOLVERS = (
    ("matching-weight1", solve_weight1_rm_misere),
    ("matching-loops", solve_loops_rm_misere),
    ("matching-bipartite", solve_bipartite_rm_misere),
)


def poly_solve(p: Position, c: Convention):
    """Route to the strongest applicable matching-based solver.

    Returns (outcome, policy, solver name); raises NotApplicable when no
    polynomial solver covers the position/convention pair.
    """
    reasons = []
    if p.variant == NIMG_RM and c is Convention.MISERE:
        for name, solver in _RM_SOLVERS:
            try:
                outcome, policy = solver(p)
                return outcome, policy, name
            except NotApplicable as exc:
                reasons.append(f"{name}: {exc}")
        raise NotApplicable("; ".join(reasons))
    if p.variant == VGEO and c is Convention.NORMAL:
        outcome, policy = solve_vgeo_undirected_normal(p)
        return outcome, policy, "matching-vgeo"
    raise NotApplicable(f"no polynomial solver for {p.variant} under {c.value}")


def format_move(variant: str, m: Move) -> str:
    if variant == NIMG_RM:
        return f"{m.k} {m.to}"
    if variant == NIMG_MR:
        return f"{m.to} {m.k}"
    return f"{m.to}"


def parse_move(variant: str, text: str) -> Move:
    parts = text.split()
    if variant == NIMG_RM:
        if len(parts) != 2:
            raise ValueError("expected `k v`: new weight, then destination")
        return Move(int(parts[1]), int(parts[0]))
    if variant == NIMG_MR:
        if len(parts) != 2:
            raise ValueError("expected `v k`: destination, then new weight")
        return Move(int(parts[0]), int(parts[1]))
    if len(parts) != 1:
        raise ValueError("expected `v`: destination vertex")
    return Move(int(parts[0]))


def _load(path: str):
    try:
        return read_position(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return None
    except PositionParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def cmd_solve(args) -> int:
    loaded = _load(args.position)
    if loaded is None:
        return EXIT_INPUT
    pos, conv = loaded
    policy = None
    solved = False
    if args.method in ("auto", "matching"):
        try:
            outcome, policy, solver_name = poly_solve(pos, conv)
            states = 0
            solved = True
        except NotApplicable as exc:
            if args.method == "matching":
                print(f"not applicable: {exc}", file=sys.stderr)
                return EXIT_NOT_APPLICABLE
    if solved:
        move = policy.choose(pos) if outcome is Outcome.N and legal_moves(pos) else None
    else:
        report = solve(pos, conv, args.budget)
        if report.budget_exhausted:
            print(f"budget exhausted after {report.states_expanded} states")
            return EXIT_BUDGET
        outcome, solver_name, states = report.outcome, "exhaustive", report.states_expanded
        move = report.principal_move
    print(f"outcome {outcome.value}")
    if move is not None:
        print(f"move {format_move(pos.variant, move)}")
    print(f"solver {solver_name}")
    if policy is not None:
        print(f"strategy {policy.provenance}")
    print(f"states {states}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    entry = REDUCTIONS[args.name]
    loaded = _load(args.input)
    if loaded is None:
        return EXIT_INPUT
    pos, conv = loaded
    if conv is not Convention.NORMAL:
        print("error: reductions take normal-convention sources", file=sys.stderr)
        return EXIT_INPUT
    try:
        entry.check_source(pos)
        out = entry.apply(pos)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    write_position(args.output, out.position, out.target_convention)
    namemap = args.namemap or args.output + ".namemap"
    with open(namemap, "w", encoding="utf-8") as fh:
        for label, vid in sorted(out.name_map.items(), key=lambda kv: kv[1]):
            fh.write(f"{label} -> {vid}\n")
    tgt = out.position
    print(
        f"wrote {args.output}: {tgt.variant} {tgt.graph.kind} "
        f"{tgt.graph.n} vertices {len(tgt.graph.edges)} edges"
    )
    print(f"wrote {namemap}")
    return EXIT_OK


def cmd_verify(args) -> int:
    disagreements = 0
    indeterminate = 0
    agreed = 0
    try:
        trials = run_reduction_grid(
            args.name,
            n=args.n,
            m=args.m,
            weight_bound=args.wmax,
            trials=args.trials,
            master_seed=args.seed,
            budget=args.budget,
            loops=args.loops,
            all_starts=args.all_starts,
        )
        print("trial seed n m start src tgt agree")
        for index, (report, pos, out) in enumerate(trials):
            src = report.source_outcome.value if report.source_outcome else "-"
            tgt = report.target_outcome.value if report.target_outcome else "-"
            flag = {True: "yes", False: "NO", None: "budget"}[report.agree]
            print(
                f"{index} {report.seed} {report.n} {report.m} "
                f"{pos.current} {src} {tgt} {flag}"
            )
            if report.agree is False:
                disagreements += 1
                bundle = write_counterexample(
                    args.counterexamples, report, pos, out.source_convention, out
                )
                print(f"counterexample written to {bundle}", file=sys.stderr)
            elif report.agree is None:
                indeterminate += 1
            else:
                agreed += 1
    except ValueError as exc:
        print(f"infeasible grid: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    total = agreed + disagreements + indeterminate
    print(f"summary: {agreed}/{total} agree, {indeterminate} indeterminate")
    if disagreements:
        return EXIT_DISAGREE
    if indeterminate:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.target != "matching":
        print(f"unknown bench target {args.target}", file=sys.stderr)
        return EXIT_INPUT
    rng = random.Random(args.seed)
    n, m = args.n, args.m
    half = n // 2
    if half == 0 or m > half * (n - half):
        print("infeasible bench size", file=sys.stderr)
        return EXIT_INFEASIBLE
    edges = set()
    while len(edges) < m:
        edges.add((rng.randrange(half), half + rng.randrange(n - half)))
    g = Graph(n, tuple(edges), directed=False)
    b = Bipartition(frozenset(range(half)), frozenset(range(half, n)))
    t0 = time.perf_counter()
    matching, phases = max_matching_bipartite_with_phases(g, b)
    dt = time.perf_counter() - t0
    print(f"matching size {matching.size} phases {phases} time {dt:.3f}s")
    return EXIT_OK


def _print_board(pos: Position, conv: Convention, human_turn: bool) -> None:
    print(f"-- {pos.variant} ({conv.value}), {'you' if human_turn else 'engine'} to move")
    cells = []
    for v in range(pos.graph.n):
        tag = f"w={pos.weights[v]}" if pos.weights is not None else ""
        if v in pos.removed_vertices:
            tag = "gone"
        mark = "*" if v == pos.current else ""
        cells.append(f"{v}[{tag}]{mark}" if tag else f"{v}{mark}")
    print("vertices:", " ".join(cells))
    sep = "->" if pos.graph.directed else "-"
    live = [e for e in pos.graph.edges if e not in pos.removed_edges]
    print("edges:", " ".join(f"{u}{sep}{v}" for u, v in live) or "(none)")


def _engine_move(pos: Position, conv: Convention, method: str, budget: int) -> Move:
    if method in ("auto", "matching"):
        try:
            outcome, policy, _ = poly_solve(pos, conv)
            if outcome is Outcome.N:
                return policy.choose(pos)
            return legal_moves(pos)[0]  # losing anyway: play on
        except NotApplicable:
            pass
    report = solve(pos, conv, budget)
    if report.outcome is Outcome.N:
        return report.principal_move
    return legal_moves(pos)[0]


def cmd_play(args) -> int:
    loaded = _load(args.position)
    if loaded is None:
        return EXIT_INPUT
    pos, conv = loaded
    if args.method == "matching":
        try:
            poly_solve(pos, conv)
        except NotApplicable as exc:
            print(f"not applicable: {exc}", file=sys.stderr)
            return EXIT_NOT_APPLICABLE
    human_turn = not args.engine_first
    while True:
        _print_board(pos, conv, human_turn)
        if not legal_moves(pos):
            stuck = "you" if human_turn else "engine"
            if conv is Convention.NORMAL:
                winner = "engine" if human_turn else "you"
            else:
                winner = stuck
            print(f"game over: {stuck} cannot move; {winner} win{'s' if winner == 'engine' else ''}")
            return EXIT_OK
        if human_turn:
            move = None
            while move is None:
                try:
                    line = input("your move> ")
                except EOFError:
                    print("\nno input: leaving game", file=sys.stderr)
                    return EXIT_INPUT
                try:
                    candidate = parse_move(pos.variant, line)
                    pos = apply_move(pos, candidate)
                    move = candidate
                except (ValueError, IllegalMoveError) as exc:
                    print(f"illegal move: {exc}")
        else:
            move = _engine_move(pos, conv, args.method, args.budget)
            print(f"engine plays: {format_move(pos.variant, move)}")
            pos = apply_move(pos, move)
        human_turn = not human_turn


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mgg",
        description="Solve, reduce and verify token and geography games on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a position file")
    p.add_argument("position")
    p.add_argument("--method", choices=("auto", "exhaustive", "matching"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("reduce", help="apply a reduction to a position file")
    p.add_argument("name", choices=sorted(REDUCTIONS))
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--namemap", default=None)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("verify", help="cross-check a reduction on random instances")
    p.add_argument("name", choices=sorted(REDUCTIONS))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--wmax", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--loops", choices=("none", "all", "free"), default="none")
    p.add_argument("--all-starts", action="store_true")
    p.add_argument("--counterexamples", default="counterexamples")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="time the bipartite matching engine")
    p.add_argument("target", choices=("matching",))
    p.add_argument("--n", type=int, default=20000)
    p.add_argument("--m", type=int, default=100000)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("play", help="play a position against the engine")
    p.add_argument("position")
    p.add_argument("--method", choices=("auto", "exhaustive", "matching"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--engine-first", action="store_true")
    p.set_defaults(fn=cmd_play)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
