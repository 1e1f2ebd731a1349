"""Immutable graph container and structural queries.

Vertices are dense integers ``0..n-1``.  Undirected edges are stored as
``(min, max)`` pairs, directed arcs as ordered pairs; a pair ``(u, u)`` is a
loop.  Parallel edges are rejected at construction.  All query functions are
pure, so graphs can be shared freely between concurrent solver runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

UNDIRECTED = "undirected"
DIRECTED = "directed"

#: Per-vertex token counts, indexed by vertex id.
WeightMap = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = []
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) has endpoint outside [0,{self.n})")
            if not self.directed and u > v:
                u, v = v, u
            canon.append((u, v))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge ({a[0]},{a[1]})")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def kind(self) -> str:
        return DIRECTED if self.directed else UNDIRECTED

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Out-neighbours per vertex, ascending.  A loop lists u in adj[u] once.

        For undirected graphs this is the ordinary (symmetric) adjacency.
        """
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            if not self.directed:
                nbrs[v].add(u)
        return tuple(tuple(sorted(s)) for s in nbrs)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def has_edge(self, u: int, v: int) -> bool:
        if not self.directed and u > v:
            u, v = v, u
        return (u, v) in self.edge_set

    def has_loop(self, u: int) -> bool:
        return (u, u) in self.edge_set

    @cached_property
    def loop_vertices(self) -> frozenset[int]:
        return frozenset(u for u, v in self.edges if u == v)

    def without_loops(self) -> "Graph":
        return Graph(self.n, tuple(e for e in self.edges if e[0] != e[1]), self.directed)


def build_graph(kind: str, n: int, edges) -> Graph:
    """Validated construction; `kind` is ``undirected`` or ``directed``."""
    if kind not in (UNDIRECTED, DIRECTED):
        raise ValueError(f"unknown graph kind {kind!r}")
    return Graph(n, tuple(edges), directed=(kind == DIRECTED))


def validate_weights(g: Graph, w) -> WeightMap:
    w = tuple(w)
    if len(w) != g.n:
        raise ValueError(f"weight map covers {len(w)} vertices, graph has {g.n}")
    if any(x < 0 for x in w):
        raise ValueError("weights must be non-negative")
    return w


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]


def bipartition(g: Graph) -> Bipartition | None:
    """Two-colour `g` by BFS, component roots going left.

    Returns None exactly when an odd closed walk exists (odd cycle, or a loop,
    which is an odd cycle of length one).
    """
    if g.directed:
        raise ValueError("bipartition is defined for undirected graphs")
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v == u:
                    return None
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return Bipartition(
        frozenset(u for u in range(g.n) if color[u] == 0),
        frozenset(u for u in range(g.n) if color[u] == 1),
    )


@dataclass(frozen=True)
class Relabeling:
    """Dense relabeling produced by induced_subgraph.

    ``old_ids[new] -> old`` translates solver moves back to the source graph;
    ``to_new`` goes the other way.
    """

    old_ids: tuple[int, ...]
    _new_ids: dict[int, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        self._new_ids.update({old: new for new, old in enumerate(self.old_ids)})

    def to_old(self, v: int) -> int:
        return self.old_ids[v]

    def to_new(self, v: int) -> int:
        return self._new_ids[v]

    def __contains__(self, old: int) -> bool:
        return old in self._new_ids


def induced_subgraph(g: Graph, keep) -> tuple[Graph, Relabeling]:
    """Subgraph on `keep`, relabelled to dense ids in ascending old-id order."""
    kept = sorted(set(keep))
    if kept and not (0 <= kept[0] and kept[-1] < g.n):
        raise ValueError("keep set contains vertices outside the graph")
    relab = Relabeling(tuple(kept))
    keep_set = set(kept)
    edges = [
        (relab.to_new(u), relab.to_new(v))
        for u, v in g.edges
        if u in keep_set and v in keep_set
    ]
    return Graph(len(kept), tuple(edges), g.directed), relab


def connected_component(g: Graph, u: int) -> set[int]:
    """Vertices reachable from `u` in an undirected graph."""
    if g.directed:
        raise ValueError("connected_component is defined for undirected graphs")
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} outside [0,{g.n})")
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
