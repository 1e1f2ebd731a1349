"""Rules engine: legal moves, move application and terminal detection.

Four variants share one interface:

* ``nimg-rm``  -- remove >= 1 token from the pointed vertex, then move the
  pointer to a neighbour.  On a vertex with no neighbours at all the move
  degenerates to removal only (the pointer stays); this makes the lone-vertex
  heap behave like a single misere Nim pile.
* ``nimg-mr``  -- move the pointer to a neighbour, then remove >= 1 token
  there.  Neighbours holding no tokens offer no move.
* ``vgeo``     -- slide the token along an arc and delete the departed vertex.
* ``egeo``     -- slide the token along an arc and delete the traversed arc
  (the whole edge on undirected graphs).

One terminal rule covers all four games: a player with no legal move loses
under the normal convention and wins under misere.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .graphs import Graph, WeightMap, validate_weights

NIMG_RM = "nimg-rm"
NIMG_MR = "nimg-mr"
VGEO = "vgeo"
EGEO = "egeo"
VARIANTS = (NIMG_RM, NIMG_MR, VGEO, EGEO)
NIMG_VARIANTS = (NIMG_RM, NIMG_MR)


class Convention(Enum):
    NORMAL = "normal"
    MISERE = "misere"


class IllegalMoveError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Move:
    """Destination plus, for nimg variants, the new weight `k`.

    nimg-rm: the pointed vertex is decreased to ``k`` and the pointer moves to
    ``to`` (``to == current`` encodes both the loop move and the stay-in-place
    removal on an isolated vertex).  nimg-mr: the pointer moves to ``to``,
    whose weight is decreased to ``k``.  Geography moves carry only ``to``.
    """

    to: int
    k: int | None = None


@dataclass(frozen=True)
class Position:
    variant: str
    graph: Graph
    current: int
    weights: WeightMap | None = None
    removed_vertices: frozenset[int] = frozenset()
    removed_edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown game variant {self.variant!r}")
        if not 0 <= self.current < self.graph.n:
            raise ValueError(f"current vertex {self.current} outside graph")
        if self.variant in NIMG_VARIANTS:
            if self.weights is None:
                raise ValueError(f"{self.variant} position requires weights")
            object.__setattr__(self, "weights", validate_weights(self.graph, self.weights))
        elif self.weights is not None:
            raise ValueError(f"{self.variant} position carries no weights")
        if self.removed_vertices:
            if self.variant != VGEO:
                raise ValueError("removed_vertices applies to vgeo only")
            if self.current in self.removed_vertices:
                raise ValueError("current vertex already removed")
            if any(not 0 <= v < self.graph.n for v in self.removed_vertices):
                raise ValueError("removed vertex outside graph")
        if self.removed_edges:
            if self.variant != EGEO:
                raise ValueError("removed_edges applies to egeo only")
            if not self.removed_edges <= self.graph.edge_set:
                raise ValueError("removed edge not in graph")


def legal_moves(p: Position) -> list[Move]:
    """All legal moves, in canonical order (ascending destination, then k)."""
    g = p.graph
    cur = p.current
    if p.variant == NIMG_RM:
        w = p.weights[cur]
        if w == 0:
            return []
        nbrs = g.adjacency[cur]
        if not nbrs:
            return [Move(cur, k) for k in range(w)]
        return [Move(v, k) for v in nbrs for k in range(w)]
    if p.variant == NIMG_MR:
        return [Move(v, k) for v in g.adjacency[cur] for k in range(p.weights[v])]
    if p.variant == VGEO:
        dead = p.removed_vertices
        return [Move(v) for v in g.adjacency[cur] if v != cur and v not in dead]
    # egeo: traverse a surviving arc out of `cur`
    dead = p.removed_edges
    if g.directed:
        return [Move(v) for v in g.adjacency[cur] if (cur, v) not in dead]
    return [
        Move(v)
        for v in g.adjacency[cur]
        if (min(cur, v), max(cur, v)) not in dead
    ]


def _check_legal(p: Position, m: Move) -> None:
    g = p.graph
    cur = p.current
    if p.variant == NIMG_RM:
        w = p.weights[cur]
        if w == 0 or m.k is None or not 0 <= m.k < w:
            raise IllegalMoveError(f"illegal nimg-rm move {m}")
        nbrs = g.adjacency[cur]
        ok = m.to in nbrs if nbrs else m.to == cur
        if not ok:
            raise IllegalMoveError(f"illegal nimg-rm destination {m.to}")
    elif p.variant == NIMG_MR:
        if (
            m.k is None
            or m.to not in g.adjacency[cur]
            or not 0 <= m.k < p.weights[m.to]
        ):
            raise IllegalMoveError(f"illegal nimg-mr move {m}")
    elif p.variant == VGEO:
        if (
            m.to == cur
            or m.to not in g.adjacency[cur]
            or m.to in p.removed_vertices
        ):
            raise IllegalMoveError(f"illegal vgeo move {m}")
    else:
        arc = (cur, m.to) if g.directed else (min(cur, m.to), max(cur, m.to))
        if m.to not in g.adjacency[cur] or arc in p.removed_edges:
            raise IllegalMoveError(f"illegal egeo move {m}")


def apply_move(p: Position, m: Move) -> Position:
    """New position after `m`; raises IllegalMoveError on contract violation."""
    _check_legal(p, m)
    if p.variant == NIMG_RM:
        w = list(p.weights)
        w[p.current] = m.k
        return replace(p, current=m.to, weights=tuple(w))
    if p.variant == NIMG_MR:
        w = list(p.weights)
        w[m.to] = m.k
        return replace(p, current=m.to, weights=tuple(w))
    if p.variant == VGEO:
        return replace(
            p, current=m.to, removed_vertices=p.removed_vertices | {p.current}
        )
    arc = (
        (p.current, m.to)
        if p.graph.directed
        else (min(p.current, m.to), max(p.current, m.to))
    )
    return replace(p, current=m.to, removed_edges=p.removed_edges | {arc})


def is_terminal(p: Position) -> bool:
    return not legal_moves(p)


def loser_to_move(p: Position, c: Convention) -> bool:
    """True iff the player to move at terminal `p` loses under `c`."""
    if not is_terminal(p):
        raise ValueError("loser_to_move applies to terminal positions")
    return c is Convention.NORMAL


def successors(p: Position) -> list[tuple[Move, Position]]:
    return [(m, apply_move(p, m)) for m in legal_moves(p)]
