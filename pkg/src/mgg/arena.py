"""Randomized instance generation, reduction cross-checks and strategy
certification.

Every random draw flows from an explicit seed; per-trial seeds derive from
(master seed, trial index) through a fixed mixer, so a suite produces the
same trials whether run serially, in parallel or re-run for one index.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .graphs import DIRECTED, UNDIRECTED, Graph, build_graph
from .kernel import (
    NIMG_VARIANTS,
    VARIANTS,
    Convention,
    Position,
    apply_move,
    legal_moves,
)
from .posfile import serialize_position
from .reductions import REDUCTIONS, ReductionOutput
from .search import DEFAULT_BUDGET, Outcome, Policy, solve

LOOP_MODES = ("none", "all", "free")

_MIX = 0x9E3779B97F4A7C15


def mix_seed(master: int, index: int) -> int:
    """SplitMix64-style mixing of (master seed, trial index)."""
    x = (master * _MIX + index + 1) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def random_graph(kind: str, n: int, m: int, loops: str, rng: random.Random) -> Graph:
    """Uniform simple graph with `m` sampled edges.

    loops="all" forces a loop on every vertex (on top of the m ordinary
    edges), "free" lets loops join the candidate pool, "none" forbids them.
    """
    if loops not in LOOP_MODES:
        raise ValueError(f"loops must be one of {LOOP_MODES}")
    if kind == DIRECTED:
        candidates = [(i, j) for i in range(n) for j in range(n) if i != j]
    elif kind == UNDIRECTED:
        candidates = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        raise ValueError(f"unknown graph kind {kind!r}")
    if loops == "free":
        candidates += [(v, v) for v in range(n)]
    if m > len(candidates):
        raise ValueError(f"cannot place {m} edges, only {len(candidates)} available")
    edges = rng.sample(candidates, m)
    if loops == "all":
        edges += [(v, v) for v in range(n)]
    return build_graph(kind, n, edges)


def random_instance(
    variant: str,
    kind: str,
    n: int,
    m: int,
    weight_bound: int,
    loops: str,
    seed: int,
    start: int | None = None,
) -> Position:
    """Deterministic random position; weights are uniform in [1, weight_bound]."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown game variant {variant!r}")
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    g = random_graph(kind, n, m, loops, rng)
    weights = None
    if variant in NIMG_VARIANTS:
        if weight_bound < 1:
            raise ValueError("weight bound must be >= 1")
        weights = tuple(rng.randint(1, weight_bound) for _ in range(n))
    if start is None:
        start = rng.randrange(n)
    return Position(variant, g, start, weights)


@dataclass(frozen=True)
class TrialReport:
    reduction: str
    seed: int
    n: int
    m: int
    weight_bound: int
    source_outcome: Outcome | None
    target_outcome: Outcome | None
    agree: bool | None
    source_states: int
    target_states: int
    source_exhausted: bool
    target_exhausted: bool

    @property
    def completed(self) -> bool:
        return not (self.source_exhausted or self.target_exhausted)


def check_reduction(
    name: str,
    instance: Position,
    budget: int = DEFAULT_BUDGET,
    seed: int = -1,
    weight_bound: int = 1,
) -> tuple[TrialReport, ReductionOutput]:
    """Solve a source position and its reduced image, report agreement.

    `agree` stays None when either side ran out of budget; an exhausted solve
    is never reported as a disagreement.
    """
    entry = REDUCTIONS[name]
    entry.check_source(instance)
    out = entry.apply(instance)
    src = solve(instance, out.source_convention, budget)
    tgt = solve(out.position, out.target_convention, budget)
    agree = None
    if not (src.budget_exhausted or tgt.budget_exhausted):
        agree = src.outcome == tgt.outcome
    report = TrialReport(
        reduction=name,
        seed=seed,
        n=instance.graph.n,
        m=len(instance.graph.edges),
        weight_bound=weight_bound,
        source_outcome=src.outcome,
        target_outcome=tgt.outcome,
        agree=agree,
        source_states=src.states_expanded,
        target_states=tgt.states_expanded,
        source_exhausted=src.budget_exhausted,
        target_exhausted=tgt.budget_exhausted,
    )
    return report, out


def verify_strategy(
    p: Position, c: Convention, policy: Policy, budget: int = DEFAULT_BUDGET
) -> bool | None:
    """Certify a claimed winning policy against every adversary line.

    Fixes the policy's move wherever the policy is to move and branches over
    all replies.  True iff every leaf is a terminal where the adversary-to-
    move loses under `c`; None when the node budget runs out (indeterminate,
    never reported as false).
    """
    expanded = 0
    stack: list[tuple[Position, bool]] = [(p, True)]
    while stack:
        pos, policy_to_move = stack.pop()
        expanded += 1
        if expanded > budget:
            return None
        moves = legal_moves(pos)
        if not moves:
            mover_loses = c is Convention.NORMAL
            adversary_to_move = not policy_to_move
            if not (mover_loses == adversary_to_move):
                return False
            continue
        if policy_to_move:
            stack.append((apply_move(pos, policy.choose(pos)), False))
        else:
            stack.extend((apply_move(pos, m), True) for m in moves)
    return True


def run_reduction_grid(
    name: str,
    n: int,
    m: int,
    weight_bound: int,
    trials: int,
    master_seed: int,
    budget: int = DEFAULT_BUDGET,
    loops: str = "none",
    all_starts: bool = False,
):
    """Deterministic trial suite for one reduction; yields TrialReports.

    Each trial draws sizes up to (n, m) from its own mixed seed.  With
    all_starts every vertex of the drawn graph is checked under the same
    descriptor.
    """
    entry = REDUCTIONS[name]
    kind = entry.source_kind if entry.source_kind != "any" else UNDIRECTED
    for index in range(trials):
        seed = mix_seed(master_seed, index)
        rng = random.Random(seed)
        nn = rng.randint(1, n)
        cap = _edge_capacity(kind, nn, loops)
        mm = rng.randint(0, min(m, cap))
        instance = random_instance(
            entry.source_variant, kind, nn, mm, weight_bound, loops, seed
        )
        starts = range(nn) if all_starts else [instance.current]
        for start in starts:
            pos = instance if start == instance.current else Position(
                instance.variant, instance.graph, start, instance.weights
            )
            report, out = check_reduction(name, pos, budget, seed, weight_bound)
            yield report, pos, out


def _edge_capacity(kind: str, n: int, loops: str) -> int:
    base = n * (n - 1) if kind == DIRECTED else n * (n - 1) // 2
    return base + (n if loops == "free" else 0)


def write_counterexample(
    directory: str,
    report: TrialReport,
    source: Position,
    source_convention: Convention,
    out: ReductionOutput,
) -> str:
    """Persist a disagreeing trial as a replayable bundle.

    Layout: source.pos, target.pos, namemap.txt (`src-entity -> tgt-vertex`),
    report.txt.  Returns the bundle directory.
    """
    bundle = os.path.join(directory, f"{report.reduction}-seed{report.seed}")
    os.makedirs(bundle, exist_ok=True)
    with open(os.path.join(bundle, "source.pos"), "w", encoding="utf-8") as fh:
        fh.write(serialize_position(source, source_convention))
    with open(os.path.join(bundle, "target.pos"), "w", encoding="utf-8") as fh:
        fh.write(serialize_position(out.position, out.target_convention))
    with open(os.path.join(bundle, "namemap.txt"), "w", encoding="utf-8") as fh:
        for label, vid in sorted(out.name_map.items(), key=lambda kv: kv[1]):
            fh.write(f"{label} -> {vid}\n")
    with open(os.path.join(bundle, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(
            f"reduction {report.reduction}\nseed {report.seed}\n"
            f"source outcome {report.source_outcome}\n"
            f"target outcome {report.target_outcome}\n"
            f"states {report.source_states} / {report.target_states}\n"
        )
    return bundle
